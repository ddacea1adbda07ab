#include "leibcheck/word.hpp"

#include "leibcheck/partitions.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace leibcheck {

void WordSum::add(const Word& word, const Scalar& coeff) {
    if (coeff.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(word, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

WordSum& WordSum::operator+=(const WordSum& rhs) {
    for (const auto& [w, c] : rhs.terms_) add(w, c);
    return *this;
}

WordSum& WordSum::operator-=(const WordSum& rhs) {
    for (const auto& [w, c] : rhs.terms_) add(w, -c);
    return *this;
}

WordSum WordSum::operator+(const WordSum& rhs) const {
    WordSum out = *this;
    out += rhs;
    return out;
}

WordSum WordSum::operator-(const WordSum& rhs) const {
    WordSum out = *this;
    out -= rhs;
    return out;
}

WordSum WordSum::operator-() const {
    WordSum out;
    for (const auto& [w, c] : terms_) out.terms_.emplace(w, -c);
    return out;
}

WordSum WordSum::scale(const Scalar& value) const {
    WordSum out;
    for (const auto& [w, c] : terms_) out.add(w, c * value);
    return out;
}

WordSum WordSum::times(const Rational& value) const {
    WordSum out;
    if (value.is_zero()) return out;
    for (const auto& [w, c] : terms_) out.terms_.emplace(w, c.times(value));
    return out;
}

WordSum WordSum::div_int(long divisor) const {
    if (divisor == 0) throw std::invalid_argument("division by zero integer");
    return times(Rational(1, divisor));
}

WordSum WordSum::arity_part(int n) const {
    WordSum out;
    for (const auto& [w, c] : terms_)
        if (w.arity() == n) out.terms_.emplace(w, c);
    return out;
}

int WordSum::max_arity() const {
    int m = 0;
    for (const auto& [w, c] : terms_) m = std::max(m, w.arity());
    return m;
}

std::string WordSum::str(const GradedSpace& space) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.str() << ")*";
        const char* sep = w.kind == WordKind::tensor ? "(x)" : ".";
        for (size_t i = 0; i < w.letters.size(); ++i) {
            if (i) os << sep;
            os << space.name(w.letters[i]);
        }
    }
    return os.str();
}

SignContext Coalgebra::sign_context(const std::vector<int>& letters) const {
    SignContext ctx;
    ctx.letter_degrees.reserve(letters.size());
    for (int l : letters) ctx.letter_degrees.push_back(space->degree(l));
    return ctx;
}

WordSum Coalgebra::word(const std::vector<int>& letters, const Scalar& coeff) const {
    if (letters.empty()) throw std::invalid_argument("words must have at least one letter");
    WordSum out;
    if (kind == WordKind::tensor) {
        out.add(Word{kind, letters}, coeff);
        return out;
    }
    std::vector<int> degrees;
    degrees.reserve(letters.size());
    for (int l : letters) degrees.push_back(space->degree(l));
    auto canon = sort_symmetric(letters, degrees);
    if (!canon) return out;
    Scalar c = canon->second < 0 ? -coeff : coeff;
    out.add(Word{kind, std::move(canon->first)}, c);
    return out;
}

WordSum Coalgebra::word_of_elements(const std::vector<Element>& letters,
                                    const Scalar& coeff) const {
    for (const auto& e : letters)
        if (!same_space(e.space(), space))
            throw std::invalid_argument("letter element lives in the wrong space");
    WordSum out;
    if (coeff.is_zero()) return out;
    std::vector<int> tuple(letters.size());
    auto rec = [&](auto&& self, size_t slot, const Scalar& acc) -> void {
        if (slot == letters.size()) {
            out += word(tuple, acc);
            return;
        }
        for (const auto& [idx, c] : letters[slot].terms()) {
            tuple[slot] = idx;
            Scalar next = acc * c;
            if (!next.is_zero()) self(self, slot + 1, next);
        }
    };
    rec(rec, 0, coeff);
    return out;
}

WordSum Coalgebra::product(const WordSum& a, const WordSum& b) const {
    if (kind != WordKind::symmetric)
        throw std::invalid_argument("word product is defined on the symmetric coalgebra");
    WordSum out;
    for (const auto& [wa, ca] : a.terms()) {
        for (const auto& [wb, cb] : b.terms()) {
            std::vector<int> letters = wa.letters;
            letters.insert(letters.end(), wb.letters.begin(), wb.letters.end());
            out += word(letters, ca * cb);
        }
    }
    return out;
}

std::vector<Word> Coalgebra::basis_words(int arity) const {
    if (arity < 1) throw std::invalid_argument("arity must be >= 1");
    std::vector<Word> out;
    std::vector<int> tuple(arity);
    if (kind == WordKind::tensor) {
        auto rec = [&](auto&& self, int slot) -> void {
            if (slot == arity) {
                out.push_back(Word{kind, tuple});
                return;
            }
            for (int i = 0; i < space->dim(); ++i) {
                tuple[slot] = i;
                self(self, slot + 1);
            }
        };
        rec(rec, 0);
        return out;
    }
    // Canonical symmetric words: nondecreasing in the (degree, index) order,
    // without repeated odd letters.
    std::vector<int> order(space->dim());
    for (int i = 0; i < space->dim(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return std::make_pair(space->degree(a), a) < std::make_pair(space->degree(b), b);
    });
    auto rec = [&](auto&& self, int slot, int min_rank) -> void {
        if (slot == arity) {
            out.push_back(Word{kind, tuple});
            return;
        }
        for (int rank = min_rank; rank < space->dim(); ++rank) {
            int letter = order[rank];
            if (slot > 0 && tuple[slot - 1] == letter && (space->degree(letter) & 1)) continue;
            tuple[slot] = letter;
            self(self, slot + 1, rank);
        }
    };
    rec(rec, 0, 0);
    std::sort(out.begin(), out.end());
    return out;
}

Element Coalgebra::generator_part(const WordSum& sum) const {
    Element out(space);
    for (const auto& [w, c] : sum.terms())
        if (w.arity() == 1) out.add_term(w.letters[0], c);
    return out;
}

void pair_add(PairSum& sum, const Word& left, const Word& right, const Scalar& coeff) {
    if (coeff.is_zero()) return;
    auto key = std::make_pair(left, right);
    auto [it, inserted] = sum.try_emplace(key, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second.is_zero()) sum.erase(it);
    }
}

PairSum comultiply(const Coalgebra& coalg, const Word& word, int truncation) {
    if (word.kind != coalg.kind) throw std::invalid_argument("word kind mismatch");
    PairSum out;
    int n = word.arity();
    if (n < 2) return out; // reduced coproduct of a single letter vanishes
    SignContext ctx = coalg.sign_context(word.letters);
    for (const auto& partition : two_block_partitions(n)) {
        int sign = koszul_sign(ctx, partition);
        std::vector<int> left, right;
        for (int p : partition.blocks[0]) left.push_back(word.letters[p - 1]);
        for (int p : partition.blocks[1]) right.push_back(word.letters[p - 1]);
        // Sub-selections of a canonical symmetric word stay canonical.
        Word lw{word.kind, std::move(left)};
        Word rw{word.kind, std::move(right)};
        pair_add(out, lw, rw, Scalar::constant(Rational(sign), truncation));
    }
    return out;
}

int word_degree(const Coalgebra& coalg, const Word& word) {
    int d = 0;
    for (int l : word.letters) d += coalg.space->degree(l);
    return d;
}

} // namespace leibcheck
