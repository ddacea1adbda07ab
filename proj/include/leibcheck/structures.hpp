#pragma once

#include "leibcheck/coalgebra.hpp"
#include "leibcheck/linear_system.hpp"

#include <string>
#include <vector>

namespace leibcheck {

enum class Flavor { lie, leibniz };

/// Differential graded Lie or Leibniz algebra as plain data: a graded space,
/// a degree +1 endomorphism and a degree-0 bilinear bracket.  Nothing is
/// assumed; the defining identities are checked by check_structure.
struct AlgebraStructure {
    std::string name;
    Flavor flavor;
    SpacePtr space;           // the algebra's own grading
    SpacePtr coalgebra_space; // space[-1]; letter degrees of the hosting coalgebra
    MultilinearMap d;         // arity 1, shift +1
    MultilinearMap bracket;   // arity 2, shift 0, both argument orders stored
    int truncation;

    AlgebraStructure(std::string name, Flavor flavor, SpacePtr space, SpacePtr coalgebra_space,
                     MultilinearMap d, MultilinearMap bracket, int truncation)
        : name(std::move(name)), flavor(flavor), space(std::move(space)),
          coalgebra_space(std::move(coalgebra_space)), d(std::move(d)),
          bracket(std::move(bracket)), truncation(truncation) {}

    Element apply_d(const Element& x) const;
    Element apply_bracket(const Element& x, const Element& y) const;
    Element basis_element(int index) const;
};

AlgebraStructure make_structure(std::string name, Flavor flavor, SpacePtr space,
                                MultilinearMap d, MultilinearMap bracket, int truncation);

/// S+(g[-1]) for the lie flavor, T+(g[-1]) for the leibniz flavor.
Coalgebra structure_coalgebra(const AlgebraStructure& alg);

/// The well-made degree-1 coderivation with Taylor coefficients
/// Q1(x) = (-1)^{|x|} dx and Q2(x,y) = (-1)^{|x|(|y|-1)} [x,y], degrees taken
/// in the algebra's own grading.
CoalgebraOperator to_coderivation(const AlgebraStructure& alg);

/// Same Taylor coefficients on the tensor coalgebra regardless of flavor
/// (any bracket/differential pair encodes as a tensor coderivation; its
/// square vanishes exactly for differential graded Leibniz algebras).
CoalgebraOperator leibniz_coderivation(const AlgebraStructure& alg);

struct CheckRecord {
    std::string name;
    bool passed = true;
    std::string witness;
};

struct StructureReport {
    std::vector<CheckRecord> checks;
    bool identities_pass = false;   // d^2 = 0, derivation rule, Jacobi-Leibniz
    bool antisymmetry_pass = true;  // lie flavor only
    bool square_zero = false;       // tensor coderivation squares to zero
    bool equivalence = false;       // identities_pass == square_zero
    bool ok() const;
};

/// Evaluates the structure identities on all basis tuples and the
/// coderivation square on words of arity <= max_arity, and records whether
/// the two verdicts agree.
StructureReport check_structure(const AlgebraStructure& alg, int max_arity = 3);

/// d_alpha = [alpha, .] - d.
Element twisted_differential(const AlgebraStructure& alg, const Element& alpha, const Element& x);

struct MCReport {
    Element residual;                  // d(alpha) - 1/2 [alpha, alpha]
    bool is_mc = false;                // residual == 0
    bool twisted_square_zero = false;  // (d_alpha)^2 = 0 on every basis element
    bool residual_bracket_zero = false; // [residual, x] = 0 for every basis x
    bool equivalence = false;          // the two conditions agree

    MCReport(SpacePtr space) : residual(std::move(space)) {}
};

/// Maurer-Cartan residual plus the equivalence between the vanishing of
/// (d_alpha)^2 and of [residual, .].  alpha must be homogeneous of degree 1.
MCReport mc_check(const AlgebraStructure& alg, const Element& alpha);

/// Derived structure on g[1]: differential d_alpha and bracket
/// [x,y]_alpha = [(-1)^{|x|} d_alpha(x), y].  Requires (d_alpha)^2 = 0.
AlgebraStructure derived_structure(const AlgebraStructure& alg, const Element& alpha);

/// Tensor coderivation of the derived structure.  For the lie flavor the
/// arity-1 coefficient is checked against Q1(x) + Q2(x.alpha) computed from
/// the symmetric-side coefficients; a mismatch throws.
CoalgebraOperator derived_coderivation(const AlgebraStructure& alg, const Element& alpha);

/// Morphism of homotopy Lie algebras given by its Taylor coefficients
/// F_n : S^n(g[-1]) -> g'[-1], all of degree 0.
struct LinfMorphism {
    AlgebraStructure source;
    AlgebraStructure target;
    std::vector<MultilinearMap> taylor;

    int max_arity() const { return static_cast<int>(taylor.size()); }
    const MultilinearMap* coefficient(int arity) const;
};

LinfMorphism identity_morphism(const AlgebraStructure& alg);

/// Strict morphism from a chain map that preserves brackets; f1 acts on the
/// unshifted spaces.
LinfMorphism strict_morphism(const AlgebraStructure& source, const AlgebraStructure& target,
                             const MultilinearMap& f1);

CoalgebraOperator morphism_operator(const LinfMorphism& morphism);

struct MorphismReport {
    std::vector<CheckRecord> checks;
    bool passed = true;
    std::string first_failure;
};

/// Exact comparison of F o Q and Q' o F on all basis words of arity <= N.
MorphismReport verify_linf_morphism(const LinfMorphism& morphism, int max_arity);

/// Arity-1 projection of (F o Q - Q' o F) on one basis word: zero at every
/// word and arity exactly when F is a morphism.
Element morphism_equation_residual(const LinfMorphism& morphism, const Word& word);

struct CompletionResult {
    LinfMorphism morphism;
    bool completed = false;
    std::optional<Obstruction> obstruction;
    int failed_arity = 0;
};

/// Fills Taylor coefficients of arities m+1..target_arity by exact linear
/// solving of the projected morphism equations (free variables zero), or
/// reports the obstruction row.
CompletionResult complete_morphism(const LinfMorphism& partial, int target_arity);

/// Image of a Maurer-Cartan element: beta = sum 1/n! F_n(alpha...alpha),
/// returned in the target algebra's own grading.  alpha must have
/// t-valuation >= 1 so the series terminates.
Element mc_image(const LinfMorphism& morphism, const Element& alpha);

/// Derivative T_alpha^k F (x_1,...,x_k) = sum_m 1/m! F_{k+m}(x_1...x_k alpha^m).
MultilinearMap taylor_derivative(const LinfMorphism& morphism, const Element& alpha, int k);

} // namespace leibcheck
