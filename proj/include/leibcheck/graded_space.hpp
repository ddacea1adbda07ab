#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace leibcheck {

/// Finite graded vector space given by an ordered basis of named generators
/// with integer degrees.
class GradedSpace {
public:
    struct BasisEntry {
        std::string name;
        int degree;
    };

    GradedSpace(std::string label, std::vector<BasisEntry> basis);

    const std::string& label() const { return label_; }
    int dim() const { return static_cast<int>(basis_.size()); }
    int degree(int index) const { return basis_.at(index).degree; }
    const std::string& name(int index) const { return basis_.at(index).name; }
    std::optional<int> index_of(std::string_view name) const;

    /// The shifted space V[s]: same basis, degrees raised by s.
    GradedSpace shifted(int s, std::string label) const;

    bool operator==(const GradedSpace& rhs) const;

private:
    std::string label_;
    std::vector<BasisEntry> basis_;
};

using SpacePtr = std::shared_ptr<const GradedSpace>;

inline SpacePtr make_space(std::string label, std::vector<GradedSpace::BasisEntry> basis) {
    return std::make_shared<const GradedSpace>(std::move(label), std::move(basis));
}

/// True when a and b refer to the same space (pointer or content equality).
bool same_space(const SpacePtr& a, const SpacePtr& b);

} // namespace leibcheck
