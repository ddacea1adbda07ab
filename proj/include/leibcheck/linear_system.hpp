#pragma once

#include "leibcheck/rational.hpp"
#include "leibcheck/scalar.hpp"

#include <map>
#include <optional>
#include <vector>

namespace leibcheck {

/// One linear equation: sum of coeff * x_var = rhs.
struct LinearEquation {
    std::map<int, Rational> coeffs;
    Rational rhs;
};

/// Certificate of inconsistency: multipliers over the input equations whose
/// combination has zero coefficients and nonzero right-hand side.
struct Obstruction {
    std::map<int, Rational> multipliers; // equation index -> multiplier
    Rational combined_rhs;
};

struct LinearSolution {
    std::map<int, Rational> values; // missing variables are zero
    Rational value(int var) const {
        auto it = values.find(var);
        return it == values.end() ? Rational(0) : it->second;
    }
};

/// Exact Gaussian elimination over the rationals.  Deterministic: rows are
/// processed in input order, pivots are the least-index variables, and free
/// variables are set to zero.  Returns either one solution or an obstruction
/// certificate.
struct SolveResult {
    std::optional<LinearSolution> solution;
    std::optional<Obstruction> obstruction;
    bool ok() const { return solution.has_value(); }
};

SolveResult solve_linear_system(const std::vector<LinearEquation>& equations);

/// Same, for systems whose coefficients and unknowns are Scalars in
/// Q[t]/(t^K): flattened one t-exponent at a time into a rational system.
struct ScalarEquation {
    std::map<int, Scalar> coeffs;
    Scalar rhs;
    ScalarEquation(int truncation) : rhs(truncation) {}
};

struct ScalarSolveResult {
    std::optional<std::map<int, Scalar>> solution; // missing variables are zero
    std::optional<Obstruction> obstruction;        // indices refer to (equation, exponent) pairs
    bool ok() const { return solution.has_value(); }
};

ScalarSolveResult solve_scalar_linear_system(const std::vector<ScalarEquation>& equations,
                                             int truncation);

} // namespace leibcheck
