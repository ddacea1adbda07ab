#include "leibcheck/structures.hpp"

#include <set>
#include <sstream>
#include <stdexcept>

namespace leibcheck {

namespace {

int parity_sign(long exponent) { return (exponent & 1) ? -1 : 1; }

std::string tuple_witness(const AlgebraStructure& alg, const std::vector<int>& tuple) {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < tuple.size(); ++i) {
        if (i) os << ",";
        os << alg.space->name(tuple[i]);
    }
    os << ")";
    return os.str();
}

long factorial(int n) {
    long f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

} // namespace

Element AlgebraStructure::apply_d(const Element& x) const {
    return d.apply(std::vector<Element>{x});
}

Element AlgebraStructure::apply_bracket(const Element& x, const Element& y) const {
    return bracket.apply(std::vector<Element>{x, y});
}

Element AlgebraStructure::basis_element(int index) const {
    return Element::unit(space, index, truncation);
}

AlgebraStructure make_structure(std::string name, Flavor flavor, SpacePtr space,
                                MultilinearMap d, MultilinearMap bracket, int truncation) {
    if (d.arity() != 1 || d.shift() != 1 || d.symmetric())
        throw std::invalid_argument("the differential must be an arity-1 map of shift +1");
    if (bracket.arity() != 2 || bracket.shift() != 0 || bracket.symmetric())
        throw std::invalid_argument("the bracket must be a plain arity-2 map of shift 0");
    if (!same_space(d.source(), space) || !same_space(d.target(), space) ||
        !same_space(bracket.source(), space) || !same_space(bracket.target(), space))
        throw std::invalid_argument("structure maps must live on the structure space");
    SpacePtr coalgebra_space =
        std::make_shared<const GradedSpace>(space->shifted(-1, name + "[-1]"));
    return AlgebraStructure(std::move(name), flavor, std::move(space),
                            std::move(coalgebra_space), std::move(d), std::move(bracket),
                            truncation);
}

Coalgebra structure_coalgebra(const AlgebraStructure& alg) {
    WordKind kind = alg.flavor == Flavor::lie ? WordKind::symmetric : WordKind::tensor;
    return Coalgebra{kind, alg.coalgebra_space};
}

namespace {

CoalgebraOperator build_coderivation(const AlgebraStructure& alg, WordKind kind) {
    const SpacePtr& V = alg.coalgebra_space;
    bool symmetric = kind == WordKind::symmetric;
    Coalgebra coalg{kind, V};

    MultilinearMap q1(1, V, V, 1, symmetric);
    for (int i = 0; i < alg.space->dim(); ++i) {
        Element dx = alg.apply_d(alg.basis_element(i));
        if (dx.is_zero()) continue;
        int sign = parity_sign(alg.space->degree(i));
        q1.add_entry({i}, (sign < 0 ? -dx : dx).in_space(V));
    }

    MultilinearMap q2(2, V, V, 1, symmetric);
    for (const Word& w : coalg.basis_words(2)) {
        int i = w.letters[0], j = w.letters[1];
        Element br = alg.apply_bracket(alg.basis_element(i), alg.basis_element(j));
        if (br.is_zero()) continue;
        long exponent = static_cast<long>(alg.space->degree(i)) * (alg.space->degree(j) - 1);
        int sign = parity_sign(exponent);
        q2.add_entry({i, j}, (sign < 0 ? -br : br).in_space(V));
    }

    return extend_coderivation(coalg, {std::move(q1), std::move(q2)});
}

} // namespace

CoalgebraOperator to_coderivation(const AlgebraStructure& alg) {
    return build_coderivation(alg, alg.flavor == Flavor::lie ? WordKind::symmetric
                                                             : WordKind::tensor);
}

CoalgebraOperator leibniz_coderivation(const AlgebraStructure& alg) {
    return build_coderivation(alg, WordKind::tensor);
}

bool StructureReport::ok() const {
    for (const auto& c : checks)
        if (!c.passed) return false;
    return true;
}

StructureReport check_structure(const AlgebraStructure& alg, int max_arity) {
    StructureReport report;
    int dim = alg.space->dim();
    auto record = [&](std::string name, bool passed, std::string witness) {
        report.checks.push_back({std::move(name), passed, std::move(witness)});
    };

    bool d_square = true;
    std::string d_witness;
    for (int i = 0; i < dim && d_square; ++i) {
        Element ddx = alg.apply_d(alg.apply_d(alg.basis_element(i)));
        if (!ddx.is_zero()) {
            d_square = false;
            d_witness = tuple_witness(alg, {i}) + " -> " + ddx.str();
        }
    }
    record("differential_squares_to_zero", d_square, d_witness);

    bool derivation = true;
    std::string derivation_witness;
    for (int i = 0; i < dim && derivation; ++i) {
        for (int j = 0; j < dim && derivation; ++j) {
            Element x = alg.basis_element(i), y = alg.basis_element(j);
            Element lhs = alg.apply_d(alg.apply_bracket(x, y));
            Element rhs = alg.apply_bracket(alg.apply_d(x), y);
            Element second = alg.apply_bracket(x, alg.apply_d(y));
            rhs += parity_sign(alg.space->degree(i)) < 0 ? -second : second;
            if (lhs != rhs) {
                derivation = false;
                derivation_witness = tuple_witness(alg, {i, j});
            }
        }
    }
    record("differential_is_a_derivation", derivation, derivation_witness);

    bool jacobi = true;
    std::string jacobi_witness;
    for (int i = 0; i < dim && jacobi; ++i) {
        for (int j = 0; j < dim && jacobi; ++j) {
            for (int k = 0; k < dim && jacobi; ++k) {
                Element x = alg.basis_element(i), y = alg.basis_element(j),
                        z = alg.basis_element(k);
                Element lhs = alg.apply_bracket(x, alg.apply_bracket(y, z));
                Element rhs = alg.apply_bracket(alg.apply_bracket(x, y), z);
                Element second = alg.apply_bracket(y, alg.apply_bracket(x, z));
                long exponent =
                    static_cast<long>(alg.space->degree(i)) * alg.space->degree(j);
                rhs += parity_sign(exponent) < 0 ? -second : second;
                if (lhs != rhs) {
                    jacobi = false;
                    jacobi_witness = tuple_witness(alg, {i, j, k});
                }
            }
        }
    }
    record("jacobi_leibniz_identity", jacobi, jacobi_witness);

    report.identities_pass = d_square && derivation && jacobi;

    if (alg.flavor == Flavor::lie) {
        bool antisym = true;
        std::string antisym_witness;
        for (int i = 0; i < dim && antisym; ++i) {
            for (int j = 0; j < dim && antisym; ++j) {
                Element x = alg.basis_element(i), y = alg.basis_element(j);
                Element lhs = alg.apply_bracket(x, y);
                Element rhs = alg.apply_bracket(y, x);
                long exponent =
                    static_cast<long>(alg.space->degree(i)) * alg.space->degree(j);
                Element want = parity_sign(exponent) < 0 ? rhs : -rhs;
                if (lhs != want) {
                    antisym = false;
                    antisym_witness = tuple_witness(alg, {i, j});
                }
            }
        }
        report.antisymmetry_pass = antisym;
        record("bracket_antisymmetry", antisym, antisym_witness);
    }

    CoalgebraOperator q = leibniz_coderivation(alg);
    bool square_zero = true;
    std::string square_witness;
    Coalgebra tc{WordKind::tensor, alg.coalgebra_space};
    for (int n = 1; n <= max_arity && square_zero; ++n) {
        for (const Word& w : tc.basis_words(n)) {
            WordSum sq = q.apply(q.apply_word(w));
            if (!sq.is_zero()) {
                square_zero = false;
                square_witness = "word arity " + std::to_string(n);
                break;
            }
        }
    }
    report.square_zero = square_zero;
    record("coderivation_squares_to_zero", square_zero, square_witness);

    report.equivalence = (report.identities_pass == report.square_zero);
    record("identity_coderivation_equivalence", report.equivalence, "");
    return report;
}

Element twisted_differential(const AlgebraStructure& alg, const Element& alpha,
                             const Element& x) {
    return alg.apply_bracket(alpha, x) - alg.apply_d(x);
}

MCReport mc_check(const AlgebraStructure& alg, const Element& alpha) {
    if (!same_space(alpha.space(), alg.space))
        throw std::invalid_argument("candidate element lives in the wrong space");
    auto deg = alpha.degree();
    if (deg && *deg != 1)
        throw std::invalid_argument("Maurer-Cartan candidates must have degree 1");

    MCReport report(alg.space);
    report.residual = alg.apply_d(alpha) - alg.apply_bracket(alpha, alpha).div_int(2);
    report.is_mc = report.residual.is_zero();

    bool twisted = true;
    for (int i = 0; i < alg.space->dim() && twisted; ++i) {
        Element once = twisted_differential(alg, alpha, alg.basis_element(i));
        if (!twisted_differential(alg, alpha, once).is_zero()) twisted = false;
    }
    report.twisted_square_zero = twisted;

    bool bracket_zero = true;
    for (int i = 0; i < alg.space->dim() && bracket_zero; ++i)
        if (!alg.apply_bracket(report.residual, alg.basis_element(i)).is_zero())
            bracket_zero = false;
    report.residual_bracket_zero = bracket_zero;

    report.equivalence = (twisted == bracket_zero);
    return report;
}

AlgebraStructure derived_structure(const AlgebraStructure& alg, const Element& alpha) {
    MCReport mc = mc_check(alg, alpha);
    if (!mc.twisted_square_zero)
        throw std::invalid_argument("twisted differential does not square to zero");

    SpacePtr h = std::make_shared<const GradedSpace>(alg.space->shifted(1, alg.name + "[1]"));
    MultilinearMap dh(1, h, h, 1, false);
    for (int i = 0; i < alg.space->dim(); ++i) {
        Element value = twisted_differential(alg, alpha, alg.basis_element(i));
        if (!value.is_zero()) dh.add_entry({i}, value.in_space(h));
    }
    MultilinearMap bh(2, h, h, 0, false);
    for (int i = 0; i < alg.space->dim(); ++i) {
        Element dx = twisted_differential(alg, alpha, alg.basis_element(i));
        if (parity_sign(alg.space->degree(i)) < 0) dx = -dx;
        if (dx.is_zero()) continue;
        for (int j = 0; j < alg.space->dim(); ++j) {
            Element value = alg.apply_bracket(dx, alg.basis_element(j));
            if (!value.is_zero()) bh.add_entry({i, j}, value.in_space(h));
        }
    }
    return make_structure(alg.name + "_derived", Flavor::leibniz, h, std::move(dh),
                          std::move(bh), alg.truncation);
}

CoalgebraOperator derived_coderivation(const AlgebraStructure& alg, const Element& alpha) {
    AlgebraStructure derived = derived_structure(alg, alpha);
    CoalgebraOperator op = to_coderivation(derived);

    if (alg.flavor == Flavor::lie) {
        // The twisted arity-1 coefficient must match Q1(x) + Q2(x.alpha)
        // computed from the symmetric-side coefficients.
        CoalgebraOperator symmetric = to_coderivation(alg);
        const SpacePtr& V = alg.coalgebra_space;
        Element alpha_v = alpha.in_space(V);
        for (int i = 0; i < alg.space->dim(); ++i) {
            Element lhs(op.source().space);
            if (const MultilinearMap* q = op.taylor(1)) lhs = q->apply_tuple(std::vector<int>{i});
            Element rhs(V);
            if (const MultilinearMap* q1 = symmetric.taylor(1))
                rhs += q1->apply_tuple(std::vector<int>{i});
            if (const MultilinearMap* q2 = symmetric.taylor(2))
                rhs += q2->apply(
                    std::vector<Element>{Element::unit(V, i, alg.truncation), alpha_v});
            if (lhs.terms() != rhs.terms())
                throw std::logic_error(
                    "twisted coefficient disagrees with Q1(x) + Q2(x.alpha) at " +
                    alg.space->name(i));
        }
    }
    return op;
}

const MultilinearMap* LinfMorphism::coefficient(int arity) const {
    if (arity < 1 || arity > static_cast<int>(taylor.size())) return nullptr;
    const MultilinearMap& m = taylor[arity - 1];
    return m.is_zero() ? nullptr : &m;
}

LinfMorphism identity_morphism(const AlgebraStructure& alg) {
    MultilinearMap f1(1, alg.coalgebra_space, alg.coalgebra_space, 0, true);
    for (int i = 0; i < alg.space->dim(); ++i)
        f1.add_entry({i}, Element::unit(alg.coalgebra_space, i, alg.truncation));
    return LinfMorphism{alg, alg, {std::move(f1)}};
}

LinfMorphism strict_morphism(const AlgebraStructure& source, const AlgebraStructure& target,
                             const MultilinearMap& f1) {
    if (f1.arity() != 1 || f1.shift() != 0)
        throw std::invalid_argument("a strict morphism is built from a degree-0 arity-1 map");
    MultilinearMap shifted(1, source.coalgebra_space, target.coalgebra_space, 0, true);
    for (int i = 0; i < source.space->dim(); ++i) {
        Element value = f1.apply_tuple(std::vector<int>{i});
        if (!value.is_zero()) shifted.add_entry({i}, value.in_space(target.coalgebra_space));
    }
    return LinfMorphism{source, target, {std::move(shifted)}};
}

CoalgebraOperator morphism_operator(const LinfMorphism& morphism) {
    if (morphism.source.flavor != Flavor::lie || morphism.target.flavor != Flavor::lie)
        throw std::invalid_argument("homotopy Lie morphisms connect lie-flavored structures");
    return extend_morphism(structure_coalgebra(morphism.source),
                           structure_coalgebra(morphism.target), morphism.taylor);
}

MorphismReport verify_linf_morphism(const LinfMorphism& morphism, int max_arity) {
    MorphismReport report;
    CoalgebraOperator qs = to_coderivation(morphism.source);
    CoalgebraOperator qt = to_coderivation(morphism.target);
    CoalgebraOperator f = morphism_operator(morphism);
    Coalgebra cs = structure_coalgebra(morphism.source);

    for (int n = 1; n <= max_arity; ++n) {
        bool arity_ok = true;
        std::string witness;
        for (const Word& w : cs.basis_words(n)) {
            WordSum lhs = f.apply(qs.apply_word(w));
            WordSum rhs = qt.apply(f.apply_word(w));
            if (lhs != rhs) {
                arity_ok = false;
                WordSum as_sum;
                as_sum.add(w, Scalar::one(morphism.source.truncation));
                witness = as_sum.str(*cs.space);
                if (report.first_failure.empty()) report.first_failure = witness;
                break;
            }
        }
        report.checks.push_back(
            {"morphism_equation_arity_" + std::to_string(n), arity_ok, witness});
        report.passed = report.passed && arity_ok;
    }
    return report;
}

Element morphism_equation_residual(const LinfMorphism& morphism, const Word& word) {
    CoalgebraOperator qs = to_coderivation(morphism.source);
    CoalgebraOperator qt = to_coderivation(morphism.target);
    Coalgebra cs = structure_coalgebra(morphism.source);
    const SpacePtr& Vt = morphism.target.coalgebra_space;

    int n = word.arity();
    Element lhs(Vt);
    WordSum qw = qs.apply_word(word);
    for (const auto& [u, c] : qw.terms()) {
        const MultilinearMap* f = morphism.coefficient(u.arity());
        if (!f) continue;
        lhs += f->apply_tuple(u.letters).scale(c);
    }

    Element rhs(Vt);
    if (const MultilinearMap* fn = morphism.coefficient(n)) {
        Element top = fn->apply_tuple(word.letters);
        if (const MultilinearMap* q1 = qt.taylor(1))
            rhs += q1->apply(std::vector<Element>{top});
    }
    if (n >= 2) {
        if (const MultilinearMap* q2 = qt.taylor(2)) {
            SignContext ctx = cs.sign_context(word.letters);
            for (const auto& partition : respectful_partitions(n, 2)) {
                const MultilinearMap* fi =
                    morphism.coefficient(static_cast<int>(partition.blocks[0].size()));
                const MultilinearMap* fj =
                    morphism.coefficient(static_cast<int>(partition.blocks[1].size()));
                if (!fi || !fj) continue;
                std::vector<int> ti, tj;
                for (int p : partition.blocks[0]) ti.push_back(word.letters[p - 1]);
                for (int p : partition.blocks[1]) tj.push_back(word.letters[p - 1]);
                Element vi = fi->apply_tuple(ti);
                Element vj = fj->apply_tuple(tj);
                if (vi.is_zero() || vj.is_zero()) continue;
                int sign = koszul_sign(ctx, partition);
                Element term = q2->apply(std::vector<Element>{vi, vj});
                rhs += sign < 0 ? -term : term;
            }
        }
    }
    return lhs - rhs;
}

CompletionResult complete_morphism(const LinfMorphism& partial, int target_arity) {
    LinfMorphism current = partial;
    const int K = partial.source.truncation;
    Coalgebra cs = structure_coalgebra(partial.source);
    const SpacePtr& Vs = partial.source.coalgebra_space;
    const SpacePtr& Vt = partial.target.coalgebra_space;

    for (int a = 1; a <= current.max_arity(); ++a)
        for (const Word& w : cs.basis_words(a))
            if (!morphism_equation_residual(current, w).is_zero())
                throw std::invalid_argument(
                    "partial morphism violates its own equations at arity " + std::to_string(a));

    CoalgebraOperator qt = to_coderivation(partial.target);

    for (int a = current.max_arity() + 1; a <= target_arity; ++a) {
        // Unknowns: one Scalar per (canonical word, admissible target index).
        std::map<std::pair<std::vector<int>, int>, int> var_of;
        auto var_id = [&](const std::vector<int>& letters, int tgt) -> std::optional<int> {
            auto it = var_of.find({letters, tgt});
            if (it == var_of.end()) return std::nullopt;
            return it->second;
        };
        std::vector<Word> words = cs.basis_words(a);
        for (const Word& w : words) {
            int want = 0;
            for (int l : w.letters) want += Vs->degree(l);
            for (int t = 0; t < Vt->dim(); ++t)
                if (Vt->degree(t) == want)
                    var_of.emplace(std::make_pair(w.letters, t),
                                   static_cast<int>(var_of.size()));
        }

        CoalgebraOperator qs = to_coderivation(current.source);
        std::vector<ScalarEquation> equations;
        for (const Word& w : words) {
            Element constant = morphism_equation_residual(current, w); // arity-a terms absent
            std::map<int, std::map<int, Scalar>> linear; // target component -> var -> coeff

            WordSum qw = qs.apply_word(w);
            for (const auto& [u, c] : qw.terms()) {
                if (u.arity() != a) continue;
                for (int t = 0; t < Vt->dim(); ++t) {
                    auto var = var_id(u.letters, t);
                    if (!var) continue;
                    auto [it, inserted] = linear[t].try_emplace(*var, c);
                    if (!inserted) it->second += c;
                }
            }
            if (const MultilinearMap* q1 = qt.taylor(1)) {
                for (int t = 0; t < Vt->dim(); ++t) {
                    auto var = var_id(w.letters, t);
                    if (!var) continue;
                    Element image = q1->apply_tuple(std::vector<int>{t});
                    for (const auto& [comp, s] : image.terms()) {
                        auto [it, inserted] = linear[comp].try_emplace(*var, -s);
                        if (!inserted) it->second -= s;
                    }
                }
            }

            std::set<int> components;
            for (const auto& [comp, s] : constant.terms()) components.insert(comp);
            for (const auto& [comp, vars] : linear) components.insert(comp);
            for (int comp : components) {
                ScalarEquation eq(K);
                auto lin = linear.find(comp);
                if (lin != linear.end())
                    for (const auto& [var, coeff] : lin->second)
                        if (!coeff.is_zero()) eq.coeffs.emplace(var, coeff);
                auto ct = constant.terms().find(comp);
                eq.rhs = ct == constant.terms().end() ? Scalar(K) : -ct->second;
                if (!eq.coeffs.empty() || !eq.rhs.is_zero()) equations.push_back(std::move(eq));
            }
        }

        ScalarSolveResult solved = solve_scalar_linear_system(equations, K);
        if (!solved.ok()) {
            CompletionResult out{current, false, std::move(solved.obstruction), a};
            return out;
        }
        MultilinearMap fa(a, Vs, Vt, 0, true);
        for (const auto& [key, var] : var_of) {
            auto it = solved.solution->find(var);
            if (it == solved.solution->end() || it->second.is_zero()) continue;
            Element value(Vt);
            value.add_term(key.second, it->second);
            fa.add_entry(key.first, value);
        }
        current.taylor.push_back(std::move(fa));

        for (const Word& w : words)
            if (!morphism_equation_residual(current, w).is_zero())
                throw std::logic_error("completion left a nonzero residual at arity " +
                                       std::to_string(a));
    }
    return CompletionResult{std::move(current), true, std::nullopt, 0};
}

Element mc_image(const LinfMorphism& morphism, const Element& alpha) {
    for (const auto& [i, c] : alpha.terms()) {
        auto v = c.valuation();
        if (v && *v == 0)
            throw std::invalid_argument("Maurer-Cartan element must have t-valuation >= 1");
    }
    const SpacePtr& Vs = morphism.source.coalgebra_space;
    const SpacePtr& Vt = morphism.target.coalgebra_space;
    Element alpha_v = alpha.in_space(Vs);
    Element beta(Vt);
    for (int n = 1; n <= morphism.max_arity(); ++n) {
        const MultilinearMap* f = morphism.coefficient(n);
        if (!f) continue;
        std::vector<Element> args(n, alpha_v);
        beta += f->apply(args).times(Rational(1, factorial(n)));
    }
    return beta.in_space(morphism.target.space);
}

MultilinearMap taylor_derivative(const LinfMorphism& morphism, const Element& alpha, int k) {
    if (k < 1) throw std::invalid_argument("derivative order must be >= 1");
    for (const auto& [i, c] : alpha.terms()) {
        auto v = c.valuation();
        if (v && *v == 0)
            throw std::invalid_argument("expansion point must have t-valuation >= 1");
    }
    const SpacePtr& Vs = morphism.source.coalgebra_space;
    const SpacePtr& Vt = morphism.target.coalgebra_space;
    Element alpha_v = alpha.in_space(Vs);
    int K = morphism.source.truncation;

    MultilinearMap out(k, Vs, Vt, 0, true);
    Coalgebra cs{WordKind::symmetric, Vs};
    for (const Word& w : cs.basis_words(k)) {
        Element value(Vt);
        for (int m = 0; k + m <= morphism.max_arity(); ++m) {
            if (m >= K && !alpha_v.is_zero()) break; // t-valuation kills the tail
            const MultilinearMap* f = morphism.coefficient(k + m);
            if (!f) continue;
            std::vector<Element> args;
            args.reserve(k + m);
            for (int l : w.letters) args.push_back(Element::unit(Vs, l, K));
            for (int c = 0; c < m; ++c) args.push_back(alpha_v);
            value += f->apply(args).times(Rational(1, factorial(m)));
        }
        if (!value.is_zero()) out.add_entry(w.letters, value);
    }
    return out;
}

} // namespace leibcheck
