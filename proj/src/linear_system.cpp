#include "leibcheck/linear_system.hpp"

#include <stdexcept>

namespace leibcheck {

namespace {

struct Row {
    std::map<int, Rational> coeffs;
    Rational rhs;
    std::map<int, Rational> history; // combination of input equations forming this row

    void add_multiple(const Row& other, const Rational& factor) {
        for (const auto& [var, c] : other.coeffs) {
            auto [it, inserted] = coeffs.try_emplace(var, c * factor);
            if (!inserted) {
                it->second += c * factor;
                if (it->second.is_zero()) coeffs.erase(it);
            }
        }
        rhs += other.rhs * factor;
        for (const auto& [eq, m] : other.history) {
            auto [it, inserted] = history.try_emplace(eq, m * factor);
            if (!inserted) {
                it->second += m * factor;
                if (it->second.is_zero()) history.erase(it);
            }
        }
    }
};

} // namespace

SolveResult solve_linear_system(const std::vector<LinearEquation>& equations) {
    std::map<int, Row> pivots; // pivot variable -> reduced row with coefficient 1 there
    for (size_t e = 0; e < equations.size(); ++e) {
        Row row;
        for (const auto& [var, c] : equations[e].coeffs)
            if (!c.is_zero()) row.coeffs.emplace(var, c);
        row.rhs = equations[e].rhs;
        row.history.emplace(static_cast<int>(e), Rational(1));

        // Reduce against known pivots.
        for (auto it = row.coeffs.begin(); it != row.coeffs.end();) {
            auto p = pivots.find(it->first);
            if (p == pivots.end()) {
                ++it;
                continue;
            }
            Rational factor = -it->second;
            row.add_multiple(p->second, factor);
            it = row.coeffs.lower_bound(p->first); // entry at pivot var is gone now
        }

        if (row.coeffs.empty()) {
            if (!row.rhs.is_zero()) {
                Obstruction obs;
                obs.multipliers = row.history;
                obs.combined_rhs = row.rhs;
                return SolveResult{std::nullopt, std::move(obs)};
            }
            continue; // redundant equation
        }
        int pivot_var = row.coeffs.begin()->first;
        Rational lead = row.coeffs.begin()->second;
        Rational inv = Rational(1) / lead;
        for (auto& [var, c] : row.coeffs) c *= inv;
        row.rhs *= inv;
        for (auto& [eq, m] : row.history) m *= inv;

        // Eliminate the new pivot from stored rows.
        for (auto& [var, stored] : pivots) {
            (void)var;
            auto hit = stored.coeffs.find(pivot_var);
            if (hit == stored.coeffs.end()) continue;
            Rational factor = -hit->second;
            stored.add_multiple(row, factor);
        }
        pivots.emplace(pivot_var, std::move(row));
    }

    LinearSolution sol;
    // Rows are fully reduced against each other; free variables are zero, so
    // each pivot variable takes its row's right-hand side directly.
    for (const auto& [var, row] : pivots)
        if (!row.rhs.is_zero()) sol.values.emplace(var, row.rhs);
    return SolveResult{std::move(sol), std::nullopt};
}

ScalarSolveResult solve_scalar_linear_system(const std::vector<ScalarEquation>& equations,
                                             int truncation) {
    // Unknown Scalar x_i becomes rational unknowns x_{i,e} for e < K; the
    // t^E slice of each equation is one rational equation.
    auto flat_var = [&](int var, int exp) { return var * truncation + exp; };
    std::vector<LinearEquation> flat;
    for (const auto& eq : equations) {
        if (eq.rhs.truncation() != truncation)
            throw std::invalid_argument("equation truncation mismatch");
        for (int E = 0; E < truncation; ++E) {
            LinearEquation f;
            for (const auto& [var, c] : eq.coeffs) {
                if (c.truncation() != truncation)
                    throw std::invalid_argument("coefficient truncation mismatch");
                for (const auto& [e, r] : c.terms()) {
                    int rest = E - e;
                    if (rest < 0) continue;
                    auto [it, inserted] = f.coeffs.try_emplace(flat_var(var, rest), r);
                    if (!inserted) it->second += r;
                }
            }
            for (auto it = f.coeffs.begin(); it != f.coeffs.end();)
                it = it->second.is_zero() ? f.coeffs.erase(it) : std::next(it);
            f.rhs = eq.rhs.coeff(E);
            if (!f.coeffs.empty() || !f.rhs.is_zero()) flat.push_back(std::move(f));
        }
    }
    SolveResult flat_result = solve_linear_system(flat);
    if (!flat_result.ok())
        return ScalarSolveResult{std::nullopt, std::move(flat_result.obstruction)};

    std::map<int, Scalar> values;
    for (const auto& [fv, r] : flat_result.solution->values) {
        int var = fv / truncation;
        int exp = fv % truncation;
        auto [it, inserted] = values.try_emplace(var, Scalar(truncation));
        it->second += Scalar::monomial(r, exp, truncation);
    }
    for (auto it = values.begin(); it != values.end();)
        it = it->second.is_zero() ? values.erase(it) : std::next(it);
    return ScalarSolveResult{std::move(values), std::nullopt};
}

} // namespace leibcheck
