#include "leibcheck/graded_space.hpp"

#include <set>
#include <stdexcept>

namespace leibcheck {

GradedSpace::GradedSpace(std::string label, std::vector<BasisEntry> basis)
    : label_(std::move(label)), basis_(std::move(basis)) {
    std::set<std::string_view> seen;
    for (const auto& b : basis_)
        if (!seen.insert(b.name).second)
            throw std::invalid_argument("duplicate basis name '" + b.name + "' in space " + label_);
}

std::optional<int> GradedSpace::index_of(std::string_view name) const {
    for (int i = 0; i < dim(); ++i)
        if (basis_[i].name == name) return i;
    return std::nullopt;
}

GradedSpace GradedSpace::shifted(int s, std::string label) const {
    std::vector<BasisEntry> basis = basis_;
    for (auto& b : basis) b.degree += s;
    return GradedSpace(std::move(label), std::move(basis));
}

bool GradedSpace::operator==(const GradedSpace& rhs) const {
    if (basis_.size() != rhs.basis_.size()) return false;
    for (size_t i = 0; i < basis_.size(); ++i)
        if (basis_[i].name != rhs.basis_[i].name || basis_[i].degree != rhs.basis_[i].degree)
            return false;
    return true;
}

bool same_space(const SpacePtr& a, const SpacePtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return *a == *b;
}

} // namespace leibcheck
