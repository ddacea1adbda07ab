#pragma once

#include "leibcheck/structures.hpp"

#include <map>

namespace leibcheck {

struct TransferReport {
    std::vector<CheckRecord> checks;
    bool passed = true;
};

struct NegativeControlReport {
    bool conclusive = false;            // the perturbation is not identically zero
    bool order2_passes = false;         // perturbed B2 still satisfies the arity-2 identity
    bool order3_nonzero = false;        // the arity-3 residual becomes nonzero
    bool unperturbed_passes = false;    // sanity: the untouched tables pass both arities
    bool replacement_b3_exists = false; // informational: can some other B3 absorb the damage?
    bool unperturbed_solvable = false;  // sanity: a B3 does exist for the untouched B2
    std::string witness;

    bool passed() const {
        return conclusive && order2_passes && order3_nonzero && unperturbed_passes &&
               unperturbed_solvable;
    }
};

/// State of the transfer construction for one (morphism, Maurer-Cartan
/// element) pair: the image element, the twisted tensor coderivations on both
/// sides, the derivatives of the morphism at alpha, and the memoized B
/// tables.
class TransferContext {
public:
    /// alpha must be a Maurer-Cartan element of the morphism's source with
    /// t-valuation >= 1.  The twisted coderivations are square-checked on
    /// words of arity <= max_arity.
    TransferContext(LinfMorphism morphism, Element alpha, int max_arity);

    const LinfMorphism& morphism() const { return morphism_; }
    const Element& alpha() const { return alpha_; }
    const Element& beta() const { return beta_; }
    int max_arity() const { return max_arity_; }
    int truncation() const { return truncation_; }

    /// Tensor coalgebras of words over the source and target; letters carry
    /// the unshifted algebra degrees.
    const Coalgebra& source_words() const { return source_words_; }
    const Coalgebra& target_words() const { return target_words_; }

    const MultilinearMap& q_alpha1() const { return q_alpha1_; }
    const MultilinearMap& q_alpha2() const { return q_alpha2_; }
    const MultilinearMap& q_beta1() const { return q_beta1_; }
    const MultilinearMap& q_beta2() const { return q_beta2_; }

    /// Symmetric arity-2 coefficient of the target Lie structure (not the
    /// derived bracket).
    const MultilinearMap& target_q2() const { return target_q2_; }

    /// T_alpha^k of the morphism, cached.
    const MultilinearMap& taylor_at_alpha(int k);

    /// B_n^j; zero outside the defined range (j >= 1 and j > n-2), memoized.
    const MultilinearMap& b_term(int n, int j);

    /// B_n = sum of B_n^j over j.
    MultilinearMap b_taylor(int n);

    /// C_n^j = B_n^j o Q_{a,1} + B_{n-1}^j o Q_{a,2} - Q_{b,1} o B_n^j, where
    /// the compositions precompose with the one-coefficient coderivation
    /// extensions.  Defined for n >= 2.
    MultilinearMap defect(int n, int j);

    /// R_n^m: the respectful sum over |I| >= 2 of
    /// eps (-1)^{|x_I|+1} sum_k Q'_2(B^k_{|I|}(Q_{a,1} x_I) . B^{m-k-1}_{|J|}(x_J)).
    MultilinearMap remainder(int n, int m);

    /// The displayed expansion that the defect is proved to equal:
    ///  j = 0: respectful sums of Q'_{b,2}(B_1^0 (x) B_{n-1}^0) over |I| = 1
    ///         and (-1)^{|x_I|} Q'_2(B^0_{|I|}(Q_{a,1} x_I) . B^0_{|J|}(x_J))
    ///         over |I| >= 2;
    ///  j >= 1: the two Q'_{b,2} sums plus R_n^j - R_n^{j+1}.
    MultilinearMap defect_expansion(int n, int j);

    /// Residual of the transfer identity at one word, for a given family of
    /// Taylor coefficients B_1..B_N (indexed from arity 1):
    ///   B_n o Q_{a,1} + B_{n-1} o Q_{a,2}
    ///     - Q_{b,1} o B_n - respectful sum of Q_{b,2}(B_{|I|} (x) B_{|J|}).
    Element identity_residual(const std::vector<MultilinearMap>& b, const Word& word);

    /// Checks the transfer identity at every arity n <= N with the
    /// constructed tables; this is the morphism property of the assembled
    /// coalgebra map through the projection criterion.
    TransferReport verify(int N);

    /// Perturbs B2 by (x,y) -> Q'_2(B_1(x).B_1(y)), rechecks the arity-2 and
    /// arity-3 identities, and attempts to solve for a replacement B3
    /// (expecting a certified obstruction).
    NegativeControlReport negative_control();

    /// Image of a tensor word under the arity-preserving part of the twisted
    /// coderivation (the arity-1 coefficient alone).
    WordSum d1_part(const Word& word) const;
    /// Image under the arity-dropping part (the arity-2 coefficient alone).
    WordSum d2_part(const Word& word) const;
    /// A map applied to a sum of words of its arity.
    Element apply_b(const MultilinearMap& b, const WordSum& words) const;
    /// B o Q_{a,1} evaluated at one word.
    Element apply_to_d1(const MultilinearMap& b, const Word& word) const {
        return apply_b(b, d1_part(word));
    }
    /// An empty map with the b-table shape at the given arity and shift.
    MultilinearMap zero_like(int n, int shift = 0) const;

private:
    LinfMorphism morphism_;
    Element alpha_;
    Element beta_;
    int max_arity_;
    int truncation_;

    Coalgebra source_words_;
    Coalgebra target_words_;
    SpacePtr Vs_, Vt_; // shifted spaces of the symmetric-side coalgebras

    MultilinearMap q_alpha1_, q_alpha2_;
    MultilinearMap q_beta1_, q_beta2_;
    MultilinearMap target_q2_;

    std::map<int, MultilinearMap> taylor_cache_;
    std::map<std::pair<int, int>, MultilinearMap> b_cache_;

    MultilinearMap zero_b_map(int n) const;
    MultilinearMap build_b_term(int n, int j);

    /// Whether the arity-3 identity admits any B3 for the given B1 and B2;
    /// false means a certified obstruction.
    bool solvable_b3(const MultilinearMap& b1, const MultilinearMap& b2);
};

} // namespace leibcheck
