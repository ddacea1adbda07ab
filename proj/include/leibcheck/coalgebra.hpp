#pragma once

#include "leibcheck/multilinear.hpp"
#include "leibcheck/word.hpp"

#include <mutex>
#include <optional>
#include <vector>

namespace leibcheck {

/// Word-level linear operator between coalgebras.
class WordOperator {
public:
    virtual ~WordOperator() = default;
    virtual const Coalgebra& source() const = 0;
    virtual const Coalgebra& target() const = 0;
    virtual int degree() const = 0;
    virtual WordSum apply_word(const Word& word) const = 0;

    WordSum apply(const WordSum& sum) const;
};

/// Coderivation or coalgebra morphism presented by its family of Taylor
/// coefficients, together with the extension rule that evaluates it on basis
/// words.  Evaluation is memoized per word.
class CoalgebraOperator : public WordOperator {
public:
    enum class Kind { coderivation, morphism };

    CoalgebraOperator(Kind kind, Coalgebra source, Coalgebra target, int degree,
                      std::vector<MultilinearMap> taylor);
    CoalgebraOperator(const CoalgebraOperator& rhs);
    CoalgebraOperator& operator=(const CoalgebraOperator&) = delete;

    Kind kind() const { return kind_; }
    const Coalgebra& source() const override { return source_; }
    const Coalgebra& target() const override { return target_; }
    int degree() const override { return degree_; }
    int max_taylor_arity() const { return static_cast<int>(taylor_.size()); }

    /// Taylor coefficient of the given arity; nullptr when absent.
    const MultilinearMap* taylor(int arity) const;

    WordSum apply_word(const Word& word) const override;

private:
    Kind kind_;
    Coalgebra source_;
    Coalgebra target_;
    int degree_;
    std::vector<MultilinearMap> taylor_; // index i holds the arity-(i+1) coefficient

    mutable std::map<Word, WordSum> memo_;
    mutable std::mutex memo_mutex_;

    WordSum evaluate(const Word& word) const;
    WordSum extend_coderivation_tensor(const Word& word) const;
    WordSum extend_coderivation_symmetric(const Word& word) const;
    WordSum extend_morphism(const Word& word) const;
};

/// Coderivation from degree-homogeneous Taylor coefficients (all must share
/// one degree shift, which becomes the coderivation degree).
CoalgebraOperator extend_coderivation(Coalgebra coalg, std::vector<MultilinearMap> taylor);

/// Coalgebra morphism from degree-0 Taylor coefficients.
CoalgebraOperator extend_morphism(Coalgebra source, Coalgebra target,
                                  std::vector<MultilinearMap> taylor);

/// Composition A after B as a word-level operator (operands must outlive it).
class ComposedOperator : public WordOperator {
public:
    ComposedOperator(const WordOperator& outer, const WordOperator& inner);
    const Coalgebra& source() const override { return inner_.source(); }
    const Coalgebra& target() const override { return outer_.target(); }
    int degree() const override { return outer_.degree() + inner_.degree(); }
    WordSum apply_word(const Word& word) const override;

private:
    const WordOperator& outer_;
    const WordOperator& inner_;
};

ComposedOperator operator_compose(const WordOperator& outer, const WordOperator& inner);
ComposedOperator operator_square(const WordOperator& op);

/// Taylor coefficients of a word operator: its arity-1 projections on basis
/// words of each arity up to max_arity (1-indexed by arity).
std::vector<MultilinearMap> project_to_generators(const WordOperator& op, int max_arity);

/// Group-like sum e^alpha - 1 = sum over n >= 1 of alpha^n / n! in the
/// symmetric coalgebra.  Without max_length, every coefficient of alpha must
/// have t-valuation >= 1 so the sum terminates by truncation.
WordSum group_like_exp(const Coalgebra& coalg, const Element& alpha, int truncation,
                       std::optional<int> max_length = std::nullopt);

// Structural identities on basis words, exact.  Each returns true on success.
bool check_coassociativity(const Coalgebra& coalg, const Word& word, int truncation);
bool check_cocommutativity(const Coalgebra& coalg, const Word& word, int truncation);
bool check_coderivation_property(const CoalgebraOperator& op, const Word& word, int truncation);
bool check_morphism_property(const CoalgebraOperator& op, const Word& word, int truncation);

/// Graded commutator [A,B] = A o B - (-1)^(|A||B|) B o A evaluated on a word.
WordSum operator_bracket(const WordOperator& a, const WordOperator& b, const Word& word);

} // namespace leibcheck
