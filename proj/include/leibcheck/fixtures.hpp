#pragma once

#include "leibcheck/structures.hpp"

namespace leibcheck::fixtures {

/// 4-dimensional DGLA with degrees (0,1,1,2):
///   [e0,e1] = e1, [e0,e2] = -e2, [e1,e2] = [e2,e1] = e3,
///   d(e0) = -e1 + e2, d(e1) = d(e2) = e3.
/// Its derived structures are nondegenerate: the twisted differential of e0
/// has components on e1 and e2, so the derived bracket does not vanish.
AlgebraStructure dgla4(int truncation);

/// A Maurer-Cartan element of dgla4 exact at every truncation order:
/// t (e1 - e2) + sum_{k>=2} (-1)^{k-1} t^k e1.
Element dgla4_mc(const AlgebraStructure& alg);

/// dgla4 extended by an inert degree-2 generator e4.
AlgebraStructure dgla5(int truncation);

/// Same space shape as dgla4 with the same differential but zero bracket;
/// the inclusion of dgla4 is a chain map that fails to preserve brackets, so
/// completing it forces a nonzero quadratic Taylor coefficient.
AlgebraStructure abelian_bracket4(int truncation);

/// 3-dimensional nilpotent DGLA with degrees (1,1,2):
/// d(e1) = e3, [e1,e2] = [e2,e1] = e3.
AlgebraStructure nilpotent3(int truncation);

/// nilpotent3 with the extra constant [e2,e2] = e3; its Maurer-Cartan
/// equation has nontrivial corrections at every order.
AlgebraStructure nilpotent3_rich(int truncation);

/// 3-dimensional graded Leibniz (non-Lie) algebra with degrees (1,1,2):
/// [u,v] = w, [v,u] = 0, d(u) = w.
AlgebraStructure leibniz3(int truncation);

/// 3-dimensional left Leibniz algebra with degrees (0,0,1):
/// [a,b] = b, [a,c] = c, all other brackets zero, d(b) = c.  Low degrees
/// leave room for many admissible structure constants, so random mutations
/// genuinely break the identities.
AlgebraStructure leibniz3_flex(int truncation);

/// 1-dimensional abelian DGLA with one degree-1 generator.
AlgebraStructure abelian1(int truncation);

/// Strict inclusion dgla4 -> dgla5.
LinfMorphism strict_inclusion(const AlgebraStructure& g4, const AlgebraStructure& g5);

/// Chain-map inclusion dgla4 -> abelian_bracket4 completed by the linear
/// solver up to the given arity; the quadratic coefficient is forced nonzero.
LinfMorphism solver_morphism(const AlgebraStructure& g4, const AlgebraStructure& target,
                             int max_arity);

/// Self-morphism of dgla4 with identity linear part and a nonzero quadratic
/// coefficient found by pinning one solver variable, completed up to the
/// given arity.  Exercises every term of the transfer recursion.
LinfMorphism twisted_morphism(const AlgebraStructure& g4, int max_arity);

} // namespace leibcheck::fixtures
