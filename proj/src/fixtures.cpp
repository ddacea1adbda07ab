#include "leibcheck/fixtures.hpp"

#include <stdexcept>

namespace leibcheck::fixtures {

namespace {

Element unit(const SpacePtr& space, int index, int K) {
    return Element::unit(space, index, K);
}

MultilinearMap zero_d(const SpacePtr& space) { return MultilinearMap(1, space, space, 1, false); }
MultilinearMap zero_b(const SpacePtr& space) { return MultilinearMap(2, space, space, 0, false); }

} // namespace

AlgebraStructure dgla4(int K) {
    SpacePtr g = make_space("g", {{"e0", 0}, {"e1", 1}, {"e2", 1}, {"e3", 2}});
    MultilinearMap d = zero_d(g);
    d.add_entry({0}, -unit(g, 1, K) + unit(g, 2, K));
    d.add_entry({1}, unit(g, 3, K));
    d.add_entry({2}, unit(g, 3, K));
    MultilinearMap b = zero_b(g);
    b.add_entry({0, 1}, unit(g, 1, K));
    b.add_entry({1, 0}, -unit(g, 1, K));
    b.add_entry({0, 2}, -unit(g, 2, K));
    b.add_entry({2, 0}, unit(g, 2, K));
    b.add_entry({1, 2}, unit(g, 3, K));
    b.add_entry({2, 1}, unit(g, 3, K));
    return make_structure("g", Flavor::lie, g, std::move(d), std::move(b), K);
}

Element dgla4_mc(const AlgebraStructure& alg) {
    int K = alg.truncation;
    Element alpha(alg.space);
    alpha.add_term(1, Scalar::monomial(Rational(1), 1, K));
    alpha.add_term(2, Scalar::monomial(Rational(-1), 1, K));
    for (int k = 2; k < K; ++k)
        alpha.add_term(1, Scalar::monomial(Rational((k % 2 == 0) ? -1 : 1), k, K));
    return alpha;
}

AlgebraStructure dgla5(int K) {
    SpacePtr g = make_space("gp", {{"e0", 0}, {"e1", 1}, {"e2", 1}, {"e3", 2}, {"e4", 2}});
    MultilinearMap d = zero_d(g);
    d.add_entry({0}, -unit(g, 1, K) + unit(g, 2, K));
    d.add_entry({1}, unit(g, 3, K));
    d.add_entry({2}, unit(g, 3, K));
    MultilinearMap b = zero_b(g);
    b.add_entry({0, 1}, unit(g, 1, K));
    b.add_entry({1, 0}, -unit(g, 1, K));
    b.add_entry({0, 2}, -unit(g, 2, K));
    b.add_entry({2, 0}, unit(g, 2, K));
    b.add_entry({1, 2}, unit(g, 3, K));
    b.add_entry({2, 1}, unit(g, 3, K));
    return make_structure("gp", Flavor::lie, g, std::move(d), std::move(b), K);
}

AlgebraStructure abelian_bracket4(int K) {
    SpacePtr g = make_space("h", {{"e0", 0}, {"e1", 1}, {"e2", 1}, {"e3", 2}});
    MultilinearMap d = zero_d(g);
    d.add_entry({0}, -unit(g, 1, K) + unit(g, 2, K));
    d.add_entry({1}, unit(g, 3, K));
    d.add_entry({2}, unit(g, 3, K));
    return make_structure("h", Flavor::lie, g, std::move(d), zero_b(g), K);
}

AlgebraStructure nilpotent3(int K) {
    SpacePtr g = make_space("n3", {{"e1", 1}, {"e2", 1}, {"e3", 2}});
    MultilinearMap d = zero_d(g);
    d.add_entry({0}, unit(g, 2, K));
    MultilinearMap b = zero_b(g);
    b.add_entry({0, 1}, unit(g, 2, K));
    b.add_entry({1, 0}, unit(g, 2, K));
    return make_structure("n3", Flavor::lie, g, std::move(d), std::move(b), K);
}

AlgebraStructure nilpotent3_rich(int K) {
    SpacePtr g = make_space("n3r", {{"e1", 1}, {"e2", 1}, {"e3", 2}});
    MultilinearMap d = zero_d(g);
    d.add_entry({0}, unit(g, 2, K));
    MultilinearMap b = zero_b(g);
    b.add_entry({0, 1}, unit(g, 2, K));
    b.add_entry({1, 0}, unit(g, 2, K));
    b.add_entry({1, 1}, unit(g, 2, K));
    return make_structure("n3r", Flavor::lie, g, std::move(d), std::move(b), K);
}

AlgebraStructure leibniz3(int K) {
    SpacePtr g = make_space("l3", {{"u", 1}, {"v", 1}, {"w", 2}});
    MultilinearMap d = zero_d(g);
    d.add_entry({0}, unit(g, 2, K));
    MultilinearMap b = zero_b(g);
    b.add_entry({0, 1}, unit(g, 2, K));
    return make_structure("l3", Flavor::leibniz, g, std::move(d), std::move(b), K);
}

AlgebraStructure leibniz3_flex(int K) {
    SpacePtr g = make_space("l3f", {{"a", 0}, {"b", 0}, {"c", 1}});
    MultilinearMap d = zero_d(g);
    d.add_entry({1}, unit(g, 2, K));
    MultilinearMap b = zero_b(g);
    b.add_entry({0, 1}, unit(g, 1, K));
    b.add_entry({0, 2}, unit(g, 2, K));
    return make_structure("l3f", Flavor::leibniz, g, std::move(d), std::move(b), K);
}

AlgebraStructure abelian1(int K) {
    SpacePtr g = make_space("a1", {{"z", 1}});
    return make_structure("a1", Flavor::lie, g, zero_d(g), zero_b(g), K);
}

LinfMorphism strict_inclusion(const AlgebraStructure& g4, const AlgebraStructure& g5) {
    MultilinearMap f1(1, g4.space, g5.space, 0, false);
    for (int i = 0; i < g4.space->dim(); ++i) {
        auto idx = g5.space->index_of(g4.space->name(i));
        if (!idx) throw std::logic_error("inclusion target misses a generator");
        f1.add_entry({i}, unit(g5.space, *idx, g4.truncation));
    }
    return strict_morphism(g4, g5, f1);
}

LinfMorphism solver_morphism(const AlgebraStructure& g4, const AlgebraStructure& target,
                             int max_arity) {
    MultilinearMap f1(1, g4.space, target.space, 0, false);
    for (int i = 0; i < g4.space->dim(); ++i) {
        auto idx = target.space->index_of(g4.space->name(i));
        if (!idx) throw std::logic_error("solver target misses a generator");
        f1.add_entry({i}, unit(target.space, *idx, g4.truncation));
    }
    LinfMorphism partial{g4, target, {}};
    {
        MultilinearMap shifted(1, g4.coalgebra_space, target.coalgebra_space, 0, true);
        for (int i = 0; i < g4.space->dim(); ++i)
            shifted.add_entry({i},
                              f1.apply_tuple(std::vector<int>{i}).in_space(target.coalgebra_space));
        partial.taylor.push_back(std::move(shifted));
    }
    CompletionResult result = complete_morphism(partial, max_arity);
    if (!result.completed)
        throw std::logic_error("solver morphism hit an obstruction at arity " +
                               std::to_string(result.failed_arity));
    if (max_arity >= 2 && !result.morphism.coefficient(2))
        throw std::logic_error("solver morphism was expected to need a quadratic term");
    return result.morphism;
}

LinfMorphism twisted_morphism(const AlgebraStructure& g4, int max_arity) {
    // Start from the identity and look for a nonzero quadratic coefficient:
    // solve the homogeneous quadratic constraint with one variable pinned to 1
    // and keep the first pin whose tower completes.
    LinfMorphism base = identity_morphism(g4);
    const SpacePtr& V = g4.coalgebra_space;
    const int K = g4.truncation;
    Coalgebra cs = structure_coalgebra(g4);

    std::vector<std::pair<std::vector<int>, int>> candidates;
    for (const Word& w : cs.basis_words(2)) {
        int want = 0;
        for (int l : w.letters) want += V->degree(l);
        for (int t = 0; t < V->dim(); ++t)
            if (V->degree(t) == want) candidates.push_back({w.letters, t});
    }

    for (const auto& pinned : candidates) {
        // Unknown quadratic coefficients, with the pinned one forced to 1.
        std::map<std::pair<std::vector<int>, int>, int> var_of;
        for (const auto& c : candidates) var_of.emplace(c, static_cast<int>(var_of.size()));

        CoalgebraOperator qs = to_coderivation(g4);
        std::vector<ScalarEquation> equations;
        for (const Word& w : cs.basis_words(2)) {
            std::map<int, std::map<int, Scalar>> linear;
            WordSum qw = qs.apply_word(w);
            for (const auto& [u, c] : qw.terms()) {
                if (u.arity() != 2) continue;
                for (int t = 0; t < V->dim(); ++t) {
                    auto it = var_of.find({u.letters, t});
                    if (it == var_of.end()) continue;
                    auto [lin, inserted] = linear[t].try_emplace(it->second, c);
                    if (!inserted) lin->second += c;
                }
            }
            if (const MultilinearMap* q1 = qs.taylor(1)) {
                for (int t = 0; t < V->dim(); ++t) {
                    auto it = var_of.find({w.letters, t});
                    if (it == var_of.end()) continue;
                    Element image = q1->apply_tuple(std::vector<int>{t});
                    for (const auto& [comp, s] : image.terms()) {
                        auto [lin, inserted] = linear[comp].try_emplace(it->second, -s);
                        if (!inserted) lin->second -= s;
                    }
                }
            }
            for (const auto& [comp, vars] : linear) {
                ScalarEquation eq(K);
                for (const auto& [var, coeff] : vars)
                    if (!coeff.is_zero()) eq.coeffs.emplace(var, coeff);
                if (!eq.coeffs.empty()) equations.push_back(std::move(eq));
            }
        }
        {
            ScalarEquation pin(K);
            pin.coeffs.emplace(var_of.at(pinned), Scalar::one(K));
            pin.rhs = Scalar::one(K);
            equations.push_back(std::move(pin));
        }
        ScalarSolveResult solved = solve_scalar_linear_system(equations, K);
        if (!solved.ok()) continue;

        MultilinearMap f2(2, V, V, 0, true);
        for (const auto& [key, var] : var_of) {
            auto it = solved.solution->find(var);
            if (it == solved.solution->end() || it->second.is_zero()) continue;
            Element value(V);
            value.add_term(key.second, it->second);
            f2.add_entry(key.first, value);
        }
        if (f2.is_zero()) continue;

        LinfMorphism candidate = base;
        candidate.taylor.push_back(std::move(f2));
        bool consistent = true;
        Coalgebra check = structure_coalgebra(g4);
        for (int a = 1; a <= 2 && consistent; ++a)
            for (const Word& w : check.basis_words(a))
                if (!morphism_equation_residual(candidate, w).is_zero()) consistent = false;
        if (!consistent) continue;

        CompletionResult completed = complete_morphism(candidate, max_arity);
        if (completed.completed) return completed.morphism;
    }
    throw std::logic_error("no twisted self-morphism found");
}

} // namespace leibcheck::fixtures
