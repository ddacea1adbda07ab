#include "leibcheck/multilinear.hpp"

#include <stdexcept>

namespace leibcheck {

MultilinearMap::MultilinearMap(int arity, SpacePtr source, SpacePtr target, int shift,
                               bool symmetric)
    : arity_(arity), source_(std::move(source)), target_(std::move(target)), shift_(shift),
      symmetric_(symmetric) {
    if (arity_ < 1) throw std::invalid_argument("multilinear arity must be >= 1");
}

void MultilinearMap::check_entry_degree(const std::vector<int>& inputs,
                                        const Element& value) const {
    int want = shift_;
    for (int i : inputs) want += source_->degree(i);
    for (const auto& [idx, coeff] : value.terms()) {
        (void)coeff;
        if (target_->degree(idx) != want)
            throw std::invalid_argument("map entry violates its degree shift: output " +
                                        target_->name(idx) + " has degree " +
                                        std::to_string(target_->degree(idx)) + ", expected " +
                                        std::to_string(want));
    }
}

void MultilinearMap::add_entry(std::vector<int> inputs, const Element& value) {
    if (static_cast<int>(inputs.size()) != arity_)
        throw std::invalid_argument("entry tuple length does not match arity");
    for (int i : inputs)
        if (i < 0 || i >= source_->dim()) throw std::out_of_range("entry index out of range");
    if (!same_space(value.space(), target_))
        throw std::invalid_argument("entry value lives in the wrong space");
    if (value.is_zero()) return;

    Element stored = value;
    if (symmetric_) {
        std::vector<int> degrees;
        degrees.reserve(inputs.size());
        for (int i : inputs) degrees.push_back(source_->degree(i));
        auto canon = sort_symmetric(inputs, degrees);
        if (!canon) return; // the word itself is zero
        inputs = std::move(canon->first);
        if (canon->second < 0) stored = -stored;
    }
    check_entry_degree(inputs, stored);

    auto it = entries_.find(inputs);
    if (it == entries_.end()) {
        entries_.emplace(std::move(inputs), std::move(stored));
    } else {
        it->second += stored;
        if (it->second.is_zero()) entries_.erase(it);
    }
}

Element MultilinearMap::apply_tuple(std::span<const int> inputs) const {
    if (static_cast<int>(inputs.size()) != arity_)
        throw std::invalid_argument("argument count does not match arity");
    std::vector<int> key(inputs.begin(), inputs.end());
    int sign = 1;
    if (symmetric_) {
        std::vector<int> degrees;
        degrees.reserve(key.size());
        for (int i : key) degrees.push_back(source_->degree(i));
        auto canon = sort_symmetric(key, degrees);
        if (!canon) return Element(target_);
        key = std::move(canon->first);
        sign = canon->second;
    }
    auto it = entries_.find(key);
    if (it == entries_.end()) return Element(target_);
    return sign < 0 ? -it->second : it->second;
}

Element MultilinearMap::apply(std::span<const Element> args) const {
    if (static_cast<int>(args.size()) != arity_)
        throw std::invalid_argument("argument count does not match arity");
    for (const auto& a : args)
        if (!same_space(a.space(), source_))
            throw std::invalid_argument("argument lives in the wrong space");

    Element out(target_);
    std::vector<int> tuple(arity_);
    std::optional<Scalar> coeff;
    auto rec = [&](auto&& self, int slot) -> void {
        if (slot == arity_) {
            out += apply_tuple(tuple).scale(*coeff);
            return;
        }
        for (const auto& [idx, c] : args[slot].terms()) {
            tuple[slot] = idx;
            std::optional<Scalar> saved = coeff;
            coeff = slot == 0 ? c : *coeff * c;
            self(self, slot + 1);
            coeff = saved;
        }
    };
    rec(rec, 0);
    return out;
}

MultilinearMap MultilinearMap::operator+(const MultilinearMap& rhs) const {
    if (arity_ != rhs.arity_ || shift_ != rhs.shift_ || symmetric_ != rhs.symmetric_ ||
        !same_space(source_, rhs.source_) || !same_space(target_, rhs.target_))
        throw std::invalid_argument("incompatible maps in sum");
    MultilinearMap out = *this;
    for (const auto& [key, value] : rhs.entries_) {
        auto it = out.entries_.find(key);
        if (it == out.entries_.end()) {
            out.entries_.emplace(key, value);
        } else {
            it->second += value;
            if (it->second.is_zero()) out.entries_.erase(it);
        }
    }
    return out;
}

MultilinearMap MultilinearMap::operator-() const {
    MultilinearMap out(arity_, source_, target_, shift_, symmetric_);
    for (const auto& [key, value] : entries_) out.entries_.emplace(key, -value);
    return out;
}

MultilinearMap MultilinearMap::scale(const Scalar& value) const {
    MultilinearMap out(arity_, source_, target_, shift_, symmetric_);
    for (const auto& [key, entry] : entries_) {
        Element scaled = entry.scale(value);
        if (!scaled.is_zero()) out.entries_.emplace(key, std::move(scaled));
    }
    return out;
}

MultilinearMap MultilinearMap::times(const Rational& value) const {
    MultilinearMap out(arity_, source_, target_, shift_, symmetric_);
    if (value.is_zero()) return out;
    for (const auto& [key, entry] : entries_) out.entries_.emplace(key, entry.times(value));
    return out;
}

MultilinearMap MultilinearMap::div_int(long divisor) const {
    if (divisor == 0) throw std::invalid_argument("division by zero integer");
    return times(Rational(1, divisor));
}

bool MultilinearMap::operator==(const MultilinearMap& rhs) const {
    return arity_ == rhs.arity_ && shift_ == rhs.shift_ && symmetric_ == rhs.symmetric_ &&
           same_space(source_, rhs.source_) && same_space(target_, rhs.target_) &&
           entries_ == rhs.entries_;
}

} // namespace leibcheck
