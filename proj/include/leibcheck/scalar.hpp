#pragma once

#include "leibcheck/rational.hpp"

#include <map>
#include <optional>
#include <string>

namespace leibcheck {

/// Truncated polynomial in one formal parameter t with rational coefficients,
/// i.e. an element of Q[t]/(t^K).  K is fixed per value; mixing truncation
/// orders throws.  All series of the theory become finite sums in this ring.
class Scalar {
public:
    /// The zero scalar at truncation order K >= 1.
    explicit Scalar(int truncation);

    static Scalar constant(const Rational& value, int truncation);
    static Scalar monomial(const Rational& value, int exponent, int truncation);
    static Scalar one(int truncation) { return constant(Rational(1), truncation); }

    int truncation() const { return trunc_; }
    bool is_zero() const { return coeffs_.empty(); }

    /// Least stored exponent; nullopt (= +infinity) for zero.
    std::optional<int> valuation() const;

    /// Coefficient of t^exponent (zero if absent).
    Rational coeff(int exponent) const;

    const std::map<int, Rational>& terms() const { return coeffs_; }

    Scalar operator-() const;
    Scalar operator+(const Scalar& rhs) const;
    Scalar operator-(const Scalar& rhs) const;
    Scalar operator*(const Scalar& rhs) const;
    Scalar& operator+=(const Scalar& rhs);
    Scalar& operator-=(const Scalar& rhs);

    Scalar times(const Rational& value) const;
    Scalar times_int(long value) const;

    /// Exact division by a nonzero integer (always exact over Q).
    Scalar div_int(long divisor) const;

    bool operator==(const Scalar& rhs) const;
    bool operator!=(const Scalar& rhs) const { return !(*this == rhs); }

    /// E.g. "1/2 - 3 t + t^2".
    std::string str() const;

private:
    int trunc_;
    std::map<int, Rational> coeffs_; // exponent -> nonzero coefficient, exponent < trunc_

    void check_same_truncation(const Scalar& rhs) const;
};

} // namespace leibcheck
