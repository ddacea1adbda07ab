#pragma once

#include "leibcheck/element.hpp"
#include "leibcheck/signs.hpp"

#include <compare>
#include <map>
#include <string>
#include <vector>

namespace leibcheck {

enum class WordKind { tensor, symmetric };

/// Basis word of the pointed tensor coalgebra T+(V) or canonical-form basis
/// word of the symmetric coalgebra S+(V).  Symmetric words are kept sorted by
/// (letter degree, basis index); the normalization sign lives in whatever
/// coefficient accompanies the word.
struct Word {
    WordKind kind = WordKind::tensor;
    std::vector<int> letters;

    int arity() const { return static_cast<int>(letters.size()); }
    auto operator<=>(const Word&) const = default;
};

/// Sparse linear combination of basis words.
class WordSum {
public:
    WordSum() = default;

    void add(const Word& word, const Scalar& coeff);
    WordSum& operator+=(const WordSum& rhs);
    WordSum& operator-=(const WordSum& rhs);
    WordSum operator+(const WordSum& rhs) const;
    WordSum operator-(const WordSum& rhs) const;
    WordSum operator-() const;
    WordSum scale(const Scalar& value) const;
    WordSum times(const Rational& value) const;
    WordSum div_int(long divisor) const;

    bool is_zero() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }
    const std::map<Word, Scalar>& terms() const { return terms_; }

    WordSum arity_part(int n) const;
    int max_arity() const;

    bool operator==(const WordSum& rhs) const { return terms_ == rhs.terms_; }
    bool operator!=(const WordSum& rhs) const { return !(*this == rhs); }

    std::string str(const GradedSpace& space) const;

private:
    std::map<Word, Scalar> terms_;
};

/// A coalgebra: T+(V) or S+(V) over a graded space whose stored degrees are
/// exactly the letter degrees used in every sign computation.
struct Coalgebra {
    WordKind kind = WordKind::tensor;
    SpacePtr space;

    SignContext sign_context(const std::vector<int>& letters) const;

    /// Word from basis letters (canonicalized for the symmetric kind, where
    /// the result may be zero or carry a normalization sign).
    WordSum word(const std::vector<int>& letters, const Scalar& coeff) const;

    /// Multilinear expansion of a word whose letters are sparse elements.
    WordSum word_of_elements(const std::vector<Element>& letters, const Scalar& coeff) const;

    /// Concatenation product (symmetric kind only).
    WordSum product(const WordSum& a, const WordSum& b) const;

    /// All basis words of the given arity: every tuple for the tensor kind,
    /// canonical (sorted, non-vanishing) words for the symmetric kind.
    std::vector<Word> basis_words(int arity) const;

    /// The arity-1 component of a word sum as an element of the space.
    Element generator_part(const WordSum& sum) const;

    bool operator==(const Coalgebra& rhs) const {
        return kind == rhs.kind && same_space(space, rhs.space);
    }
};

/// Sum of word pairs with Scalar coefficients (the image of a reduced
/// comultiplication).
using PairSum = std::map<std::pair<Word, Word>, Scalar>;

void pair_add(PairSum& sum, const Word& left, const Word& right, const Scalar& coeff);

/// Reduced comultiplication of a basis word: the signed sum over two-block
/// splittings, both factors nonempty.
PairSum comultiply(const Coalgebra& coalg, const Word& word, int truncation);

/// Total degree of a word (sum of letter degrees).
int word_degree(const Coalgebra& coalg, const Word& word);

} // namespace leibcheck
