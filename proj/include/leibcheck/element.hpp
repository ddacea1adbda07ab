#pragma once

#include "leibcheck/graded_space.hpp"
#include "leibcheck/scalar.hpp"

#include <map>
#include <optional>
#include <string>

namespace leibcheck {

/// Sparse vector in a graded space, with Scalar coefficients.
class Element {
public:
    explicit Element(SpacePtr space) : space_(std::move(space)) {}

    static Element unit(SpacePtr space, int index, int truncation);

    const SpacePtr& space() const { return space_; }
    const std::map<int, Scalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(int index, const Scalar& coeff);

    Element operator-() const;
    Element operator+(const Element& rhs) const;
    Element operator-(const Element& rhs) const;
    Element& operator+=(const Element& rhs);
    Element& operator-=(const Element& rhs);
    Element scale(const Scalar& value) const;
    Element times(const Rational& value) const;
    Element div_int(long divisor) const;

    bool operator==(const Element& rhs) const;
    bool operator!=(const Element& rhs) const { return !(*this == rhs); }

    /// Common degree of the stored basis terms; nullopt for zero or mixed.
    std::optional<int> degree() const;

    /// Same coefficients read in another space with an identical basis list
    /// (used to move between a space and its shifts).
    Element in_space(SpacePtr other) const;

    std::string str() const;

private:
    SpacePtr space_;
    std::map<int, Scalar> terms_;
};

} // namespace leibcheck
