#include "leibcheck/element.hpp"

#include <sstream>
#include <stdexcept>

namespace leibcheck {

Element Element::unit(SpacePtr space, int index, int truncation) {
    Element e(std::move(space));
    e.add_term(index, Scalar::one(truncation));
    return e;
}

void Element::add_term(int index, const Scalar& coeff) {
    if (index < 0 || index >= space_->dim())
        throw std::out_of_range("basis index out of range in space " + space_->label());
    if (coeff.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(index, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Element Element::operator-() const {
    Element out(space_);
    for (const auto& [i, c] : terms_) out.terms_.emplace(i, -c);
    return out;
}

Element& Element::operator+=(const Element& rhs) {
    if (!same_space(space_, rhs.space_))
        throw std::invalid_argument("element spaces differ: " + space_->label() + " vs " +
                                    rhs.space_->label());
    for (const auto& [i, c] : rhs.terms_) add_term(i, c);
    return *this;
}

Element& Element::operator-=(const Element& rhs) {
    return *this += -rhs;
}

Element Element::operator+(const Element& rhs) const {
    Element out = *this;
    out += rhs;
    return out;
}

Element Element::operator-(const Element& rhs) const {
    Element out = *this;
    out -= rhs;
    return out;
}

Element Element::scale(const Scalar& value) const {
    Element out(space_);
    for (const auto& [i, c] : terms_) {
        Scalar s = c * value;
        if (!s.is_zero()) out.terms_.emplace(i, s);
    }
    return out;
}

Element Element::times(const Rational& value) const {
    Element out(space_);
    if (value.is_zero()) return out;
    for (const auto& [i, c] : terms_) out.terms_.emplace(i, c.times(value));
    return out;
}

Element Element::div_int(long divisor) const {
    if (divisor == 0) throw std::invalid_argument("division by zero integer");
    return times(Rational(1, divisor));
}

bool Element::operator==(const Element& rhs) const {
    return same_space(space_, rhs.space_) && terms_ == rhs.terms_;
}

std::optional<int> Element::degree() const {
    std::optional<int> deg;
    for (const auto& [i, c] : terms_) {
        int d = space_->degree(i);
        if (!deg) deg = d;
        else if (*deg != d) return std::nullopt;
    }
    return deg;
}

Element Element::in_space(SpacePtr other) const {
    if (other->dim() != space_->dim())
        throw std::invalid_argument("space dimension mismatch in reinterpretation");
    for (int i = 0; i < other->dim(); ++i)
        if (other->name(i) != space_->name(i))
            throw std::invalid_argument("basis name mismatch in reinterpretation");
    Element out(std::move(other));
    out.terms_ = terms_;
    return out;
}

std::string Element::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [i, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.str() << ")*" << space_->name(i);
    }
    return os.str();
}

} // namespace leibcheck
