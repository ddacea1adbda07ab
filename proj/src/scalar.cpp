#include "leibcheck/scalar.hpp"

#include <sstream>
#include <stdexcept>

namespace leibcheck {

Scalar::Scalar(int truncation) : trunc_(truncation) {
    if (truncation < 1) throw std::invalid_argument("truncation order must be >= 1");
}

Scalar Scalar::constant(const Rational& value, int truncation) {
    return monomial(value, 0, truncation);
}

Scalar Scalar::monomial(const Rational& value, int exponent, int truncation) {
    Scalar s(truncation);
    if (exponent < 0) throw std::invalid_argument("negative exponent");
    if (exponent < truncation && !value.is_zero()) s.coeffs_.emplace(exponent, value);
    return s;
}

std::optional<int> Scalar::valuation() const {
    if (coeffs_.empty()) return std::nullopt;
    return coeffs_.begin()->first;
}

Rational Scalar::coeff(int exponent) const {
    auto it = coeffs_.find(exponent);
    return it == coeffs_.end() ? Rational(0) : it->second;
}

void Scalar::check_same_truncation(const Scalar& rhs) const {
    if (trunc_ != rhs.trunc_)
        throw std::invalid_argument("mixed truncation orders: " + std::to_string(trunc_) +
                                    " vs " + std::to_string(rhs.trunc_));
}

Scalar Scalar::operator-() const {
    Scalar out(trunc_);
    for (const auto& [e, c] : coeffs_) out.coeffs_.emplace(e, -c);
    return out;
}

Scalar& Scalar::operator+=(const Scalar& rhs) {
    check_same_truncation(rhs);
    for (const auto& [e, c] : rhs.coeffs_) {
        auto [it, inserted] = coeffs_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) coeffs_.erase(it);
        }
    }
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& rhs) {
    return *this += -rhs;
}

Scalar Scalar::operator+(const Scalar& rhs) const {
    Scalar out = *this;
    out += rhs;
    return out;
}

Scalar Scalar::operator-(const Scalar& rhs) const {
    Scalar out = *this;
    out -= rhs;
    return out;
}

Scalar Scalar::operator*(const Scalar& rhs) const {
    check_same_truncation(rhs);
    Scalar out(trunc_);
    for (const auto& [ea, ca] : coeffs_) {
        for (const auto& [eb, cb] : rhs.coeffs_) {
            int e = ea + eb;
            if (e >= trunc_) break; // rhs exponents ascend
            auto [it, inserted] = out.coeffs_.try_emplace(e, ca * cb);
            if (!inserted) it->second += ca * cb;
        }
    }
    for (auto it = out.coeffs_.begin(); it != out.coeffs_.end();)
        it = it->second.is_zero() ? out.coeffs_.erase(it) : std::next(it);
    return out;
}

Scalar Scalar::times(const Rational& value) const {
    Scalar out(trunc_);
    if (value.is_zero()) return out;
    for (const auto& [e, c] : coeffs_) out.coeffs_.emplace(e, c * value);
    return out;
}

Scalar Scalar::times_int(long value) const {
    return times(Rational(value));
}

Scalar Scalar::div_int(long divisor) const {
    if (divisor == 0) throw std::invalid_argument("division by zero integer");
    return times(Rational(1, divisor));
}

bool Scalar::operator==(const Scalar& rhs) const {
    check_same_truncation(rhs);
    return coeffs_ == rhs.coeffs_;
}

std::string Scalar::str() const {
    if (coeffs_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : coeffs_) {
        Rational a = c;
        if (first) {
            if (a < 0) { os << "-"; a = -a; }
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        first = false;
        bool unit = (a == 1) && e > 0;
        if (!unit) os << rational_str(a);
        if (e > 0) {
            if (!unit) os << " ";
            os << "t";
            if (e > 1) os << "^" << e;
        }
    }
    return os.str();
}

} // namespace leibcheck
