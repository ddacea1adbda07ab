#include "leibcheck/coalgebra.hpp"

#include "leibcheck/partitions.hpp"

#include <stdexcept>
#include <tuple>

namespace leibcheck {

WordSum WordOperator::apply(const WordSum& sum) const {
    WordSum out;
    for (const auto& [w, c] : sum.terms()) out += apply_word(w).scale(c);
    return out;
}

CoalgebraOperator::CoalgebraOperator(Kind kind, Coalgebra source, Coalgebra target, int degree,
                                     std::vector<MultilinearMap> taylor)
    : kind_(kind), source_(std::move(source)), target_(std::move(target)), degree_(degree),
      taylor_(std::move(taylor)) {
    if (kind_ == Kind::coderivation && !(source_ == target_))
        throw std::invalid_argument("a coderivation acts on a single coalgebra");
    if (kind_ == Kind::morphism && degree_ != 0)
        throw std::invalid_argument("coalgebra morphisms have degree 0");
    for (size_t i = 0; i < taylor_.size(); ++i) {
        const auto& m = taylor_[i];
        if (m.arity() != static_cast<int>(i + 1))
            throw std::invalid_argument("taylor coefficient at the wrong arity slot");
        if (!same_space(m.source(), source_.space) || !same_space(m.target(), target_.space))
            throw std::invalid_argument("taylor coefficient spaces do not match the coalgebras");
        if (!m.is_zero() && m.shift() != degree_)
            throw std::invalid_argument("taylor coefficients must share the operator degree");
        bool want_symmetric = source_.kind == WordKind::symmetric;
        if (m.symmetric() != want_symmetric)
            throw std::invalid_argument("taylor coefficient symmetry does not match the coalgebra");
    }
}

CoalgebraOperator::CoalgebraOperator(const CoalgebraOperator& rhs)
    : kind_(rhs.kind_), source_(rhs.source_), target_(rhs.target_), degree_(rhs.degree_),
      taylor_(rhs.taylor_) {}

const MultilinearMap* CoalgebraOperator::taylor(int arity) const {
    if (arity < 1 || arity > static_cast<int>(taylor_.size())) return nullptr;
    const MultilinearMap& m = taylor_[arity - 1];
    return m.is_zero() ? nullptr : &m;
}

WordSum CoalgebraOperator::apply_word(const Word& word) const {
    if (word.kind != source_.kind) throw std::invalid_argument("word kind mismatch");
    {
        std::lock_guard lock(memo_mutex_);
        auto it = memo_.find(word);
        if (it != memo_.end()) return it->second;
    }
    WordSum result = evaluate(word);
    std::lock_guard lock(memo_mutex_);
    auto [it, inserted] = memo_.try_emplace(word, std::move(result));
    return it->second;
}

WordSum CoalgebraOperator::evaluate(const Word& word) const {
    if (kind_ == Kind::morphism) return extend_morphism(word);
    return source_.kind == WordKind::tensor ? extend_coderivation_tensor(word)
                                            : extend_coderivation_symmetric(word);
}

WordSum CoalgebraOperator::extend_coderivation_tensor(const Word& word) const {
    // Sum over extraction sets i_1 < ... < i_k: the coefficient value is
    // inserted where the last extracted letter stood and the other extracted
    // letters disappear; the sign carries the operator symbol past the
    // surviving letters and collects the extracted ones behind it.
    WordSum out;
    int n = word.arity();
    SignContext ctx = source_.sign_context(word.letters);
    for (const auto& subset : nonempty_subsets(n)) {
        const MultilinearMap* coeff = taylor(static_cast<int>(subset.size()));
        if (!coeff) continue;
        std::vector<int> tuple;
        tuple.reserve(subset.size());
        for (int p : subset) tuple.push_back(word.letters[p - 1]);
        Element value = coeff->apply_tuple(tuple);
        if (value.is_zero()) continue;
        int sign = epsilon_insertion(ctx, degree_, subset);

        std::vector<int> shape; // -1 marks the insertion slot
        shape.reserve(n - subset.size() + 1);
        size_t next = 0;
        int slot = -1;
        for (int p = 1; p <= n; ++p) {
            if (next < subset.size() && subset[next] == p) {
                ++next;
                if (next == subset.size()) { // last extracted position
                    slot = static_cast<int>(shape.size());
                    shape.push_back(-1);
                }
                continue;
            }
            shape.push_back(word.letters[p - 1]);
        }
        for (const auto& [idx, c] : value.terms()) {
            shape[slot] = idx;
            out.add(Word{WordKind::tensor, shape}, sign < 0 ? -c : c);
        }
    }
    return out;
}

WordSum CoalgebraOperator::extend_coderivation_symmetric(const Word& word) const {
    // Sum over nonempty I: shuffle x_I to the front, apply the coefficient
    // there and multiply back with the remaining letters.
    WordSum out;
    int n = word.arity();
    SignContext ctx = source_.sign_context(word.letters);
    for (const auto& subset : nonempty_subsets(n)) {
        const MultilinearMap* coeff = taylor(static_cast<int>(subset.size()));
        if (!coeff) continue;
        std::vector<int> tuple;
        for (int p : subset) tuple.push_back(word.letters[p - 1]);
        Element value = coeff->apply_tuple(tuple);
        if (value.is_zero()) continue;

        std::vector<int> rest, complement;
        size_t k = 0;
        for (int p = 1; p <= n; ++p) {
            if (k < subset.size() && subset[k] == p) { ++k; continue; }
            rest.push_back(word.letters[p - 1]);
            complement.push_back(p);
        }
        BlockPartition shuffle{n, {subset}};
        if (!complement.empty()) shuffle.blocks.push_back(std::move(complement));
        int sign = koszul_sign(ctx, shuffle);

        for (const auto& [idx, c] : value.terms()) {
            std::vector<int> letters;
            letters.reserve(rest.size() + 1);
            letters.push_back(idx);
            letters.insert(letters.end(), rest.begin(), rest.end());
            out += source_.word(letters, sign < 0 ? -c : c);
        }
    }
    return out;
}

WordSum CoalgebraOperator::extend_morphism(const Word& word) const {
    // Respectful sum over ordered partitions with increasing block maxima.
    // On the symmetric side this coincides with the unrestricted sum weighted
    // by 1/j!, since reordering blocks and renormalizing the product word
    // produce the same Koszul factor.
    WordSum out;
    int n = word.arity();
    SignContext ctx = source_.sign_context(word.letters);
    for (const auto& partition : respectful_partitions_all(n)) {
        std::vector<Element> values;
        values.reserve(partition.blocks.size());
        bool dead = false;
        for (const auto& block : partition.blocks) {
            const MultilinearMap* coeff = taylor(static_cast<int>(block.size()));
            if (!coeff) { dead = true; break; }
            std::vector<int> tuple;
            tuple.reserve(block.size());
            for (int p : block) tuple.push_back(word.letters[p - 1]);
            Element value = coeff->apply_tuple(tuple);
            if (value.is_zero()) { dead = true; break; }
            values.push_back(std::move(value));
        }
        if (dead) continue;
        int sign = koszul_sign(ctx, partition);
        int truncation = values.front().terms().begin()->second.truncation();
        out += target_.word_of_elements(values, Scalar::constant(Rational(sign), truncation));
    }
    return out;
}

CoalgebraOperator extend_coderivation(Coalgebra coalg, std::vector<MultilinearMap> taylor) {
    std::optional<int> degree;
    for (const auto& m : taylor)
        if (!m.is_zero()) {
            if (degree && *degree != m.shift())
                throw std::invalid_argument("taylor coefficients of mixed degrees");
            degree = m.shift();
        }
    Coalgebra target = coalg;
    return CoalgebraOperator(CoalgebraOperator::Kind::coderivation, std::move(coalg),
                             std::move(target), degree.value_or(0), std::move(taylor));
}

CoalgebraOperator extend_morphism(Coalgebra source, Coalgebra target,
                                  std::vector<MultilinearMap> taylor) {
    return CoalgebraOperator(CoalgebraOperator::Kind::morphism, std::move(source),
                             std::move(target), 0, std::move(taylor));
}

ComposedOperator::ComposedOperator(const WordOperator& outer, const WordOperator& inner)
    : outer_(outer), inner_(inner) {
    if (!(outer.source() == inner.target()))
        throw std::invalid_argument("composition over mismatched coalgebras");
}

WordSum ComposedOperator::apply_word(const Word& word) const {
    return outer_.apply(inner_.apply_word(word));
}

ComposedOperator operator_compose(const WordOperator& outer, const WordOperator& inner) {
    return ComposedOperator(outer, inner);
}

ComposedOperator operator_square(const WordOperator& op) {
    return ComposedOperator(op, op);
}

std::vector<MultilinearMap> project_to_generators(const WordOperator& op, int max_arity) {
    std::vector<MultilinearMap> out;
    const Coalgebra& src = op.source();
    const Coalgebra& tgt = op.target();
    for (int n = 1; n <= max_arity; ++n) {
        MultilinearMap m(n, src.space, tgt.space, op.degree(),
                         src.kind == WordKind::symmetric);
        for (const Word& w : src.basis_words(n)) {
            Element value = tgt.generator_part(op.apply_word(w));
            if (!value.is_zero()) m.add_entry(w.letters, value);
        }
        out.push_back(std::move(m));
    }
    return out;
}

WordSum group_like_exp(const Coalgebra& coalg, const Element& alpha, int truncation,
                       std::optional<int> max_length) {
    if (coalg.kind != WordKind::symmetric)
        throw std::invalid_argument("group-like exponentials live in the symmetric coalgebra");
    WordSum out;
    if (alpha.is_zero()) return out;
    bool truncating = true;
    for (const auto& [i, c] : alpha.terms()) {
        auto v = c.valuation();
        if (v && *v == 0) truncating = false;
    }
    if (!truncating && !max_length)
        throw std::invalid_argument("exponential does not terminate: "
                                    "coefficient of t-valuation 0 and no length bound");

    WordSum alpha_word = coalg.word_of_elements({alpha}, Scalar::one(truncation));
    WordSum power = alpha_word; // alpha^n / n!
    out += power;
    for (int n = 2; !power.is_zero(); ++n) {
        if (max_length && n > *max_length) break;
        power = coalg.product(power, alpha_word).div_int(n);
        out += power;
    }
    return out;
}

namespace {

using TripleKey = std::tuple<Word, Word, Word>;
using TripleSum = std::map<TripleKey, Scalar>;

void triple_add(TripleSum& sum, const TripleKey& key, const Scalar& coeff) {
    if (coeff.is_zero()) return;
    auto [it, inserted] = sum.try_emplace(key, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second.is_zero()) sum.erase(it);
    }
}

} // namespace

bool check_coassociativity(const Coalgebra& coalg, const Word& word, int truncation) {
    PairSum delta = comultiply(coalg, word, truncation);
    TripleSum left, right;
    for (const auto& [pair, c] : delta) {
        for (const auto& [inner, d] : comultiply(coalg, pair.first, truncation))
            triple_add(left, {inner.first, inner.second, pair.second}, c * d);
        for (const auto& [inner, d] : comultiply(coalg, pair.second, truncation))
            triple_add(right, {pair.first, inner.first, inner.second}, c * d);
    }
    return left == right;
}

bool check_cocommutativity(const Coalgebra& coalg, const Word& word, int truncation) {
    PairSum delta = comultiply(coalg, word, truncation);
    PairSum flipped;
    for (const auto& [pair, c] : delta) {
        int du = word_degree(coalg, pair.first);
        int dv = word_degree(coalg, pair.second);
        int sign = (du & 1) && (dv & 1) ? -1 : 1;
        pair_add(flipped, pair.second, pair.first, sign < 0 ? -c : c);
    }
    return delta == flipped;
}

bool check_coderivation_property(const CoalgebraOperator& op, const Word& word, int truncation) {
    const Coalgebra& coalg = op.source();
    PairSum lhs;
    WordSum image = op.apply_word(word);
    for (const auto& [w, c] : image.terms())
        for (const auto& [pair, d] : comultiply(coalg, w, truncation))
            pair_add(lhs, pair.first, pair.second, c * d);

    PairSum rhs;
    int q = op.degree();
    for (const auto& [pair, c] : comultiply(coalg, word, truncation)) {
        WordSum left = op.apply_word(pair.first);
        for (const auto& [w, d] : left.terms())
            pair_add(rhs, w, pair.second, c * d);
        int sign = (q & 1) && (word_degree(coalg, pair.first) & 1) ? -1 : 1;
        WordSum right = op.apply_word(pair.second);
        for (const auto& [w, d] : right.terms()) {
            Scalar coeff = c * d;
            pair_add(rhs, pair.first, w, sign < 0 ? -coeff : coeff);
        }
    }
    return lhs == rhs;
}

bool check_morphism_property(const CoalgebraOperator& op, const Word& word, int truncation) {
    PairSum lhs;
    WordSum image = op.apply_word(word);
    for (const auto& [w, c] : image.terms())
        for (const auto& [pair, d] : comultiply(op.target(), w, truncation))
            pair_add(lhs, pair.first, pair.second, c * d);

    PairSum rhs;
    for (const auto& [pair, c] : comultiply(op.source(), word, truncation)) {
        WordSum left = op.apply_word(pair.first);
        WordSum right = op.apply_word(pair.second);
        for (const auto& [a, ca] : left.terms())
            for (const auto& [b, cb] : right.terms())
                pair_add(rhs, a, b, c * ca * cb);
    }
    return lhs == rhs;
}

WordSum operator_bracket(const WordOperator& a, const WordOperator& b, const Word& word) {
    WordSum out = a.apply(b.apply_word(word));
    int sign = (a.degree() & 1) && (b.degree() & 1) ? -1 : 1;
    WordSum other = b.apply(a.apply_word(word));
    if (sign < 0) out += other;
    else out -= other;
    return out;
}

} // namespace leibcheck
