#include "leibcheck/transfer.hpp"

#include <set>
#include <sstream>
#include <stdexcept>

namespace leibcheck {

namespace {

int parity_sign(long exponent) { return (exponent & 1) ? -1 : 1; }

std::string word_witness(const Coalgebra& coalg, const Word& word) {
    std::ostringstream os;
    for (size_t i = 0; i < word.letters.size(); ++i) {
        if (i) os << (word.kind == WordKind::tensor ? "(x)" : ".");
        os << coalg.space->name(word.letters[i]);
    }
    return os.str();
}

} // namespace

TransferContext::TransferContext(LinfMorphism morphism, Element alpha, int max_arity)
    : morphism_(std::move(morphism)), alpha_(std::move(alpha)),
      beta_(mc_image(morphism_, alpha_)), max_arity_(max_arity),
      truncation_(morphism_.source.truncation),
      source_words_{WordKind::tensor, nullptr}, target_words_{WordKind::tensor, nullptr},
      Vs_(morphism_.source.coalgebra_space), Vt_(morphism_.target.coalgebra_space),
      q_alpha1_(1, Vs_, Vs_, 1, false), q_alpha2_(2, Vs_, Vs_, 1, false),
      q_beta1_(1, Vt_, Vt_, 1, false), q_beta2_(2, Vt_, Vt_, 1, false),
      target_q2_(2, Vt_, Vt_, 1, true) {
    if (max_arity_ < 2) throw std::invalid_argument("transfer needs max_arity >= 2");
    MCReport mc = mc_check(morphism_.source, alpha_);
    if (!mc.is_mc)
        throw std::invalid_argument("transfer requires a Maurer-Cartan element; residual " +
                                    mc.residual.str());

    CoalgebraOperator qa = derived_coderivation(morphism_.source, alpha_);
    CoalgebraOperator qb = derived_coderivation(morphism_.target, beta_);
    source_words_ = qa.source();
    target_words_ = qb.source();

    auto take = [](const CoalgebraOperator& op, int arity, const Coalgebra& c) {
        if (const MultilinearMap* m = op.taylor(arity)) return *m;
        return MultilinearMap(arity, c.space, c.space, 1, false);
    };
    q_alpha1_ = take(qa, 1, source_words_);
    q_alpha2_ = take(qa, 2, source_words_);
    q_beta1_ = take(qb, 1, target_words_);
    q_beta2_ = take(qb, 2, target_words_);

    CoalgebraOperator target_sym = to_coderivation(morphism_.target);
    if (const MultilinearMap* q2 = target_sym.taylor(2)) target_q2_ = *q2;

    // Both twisted coderivations square to zero on words up to max_arity.
    for (int n = 1; n <= max_arity_; ++n) {
        for (const Word& w : source_words_.basis_words(n))
            if (!qa.apply(qa.apply_word(w)).is_zero())
                throw std::logic_error("twisted source coderivation does not square to zero");
        for (const Word& w : target_words_.basis_words(n))
            if (!qb.apply(qb.apply_word(w)).is_zero())
                throw std::logic_error("twisted target coderivation does not square to zero");
    }
}

const MultilinearMap& TransferContext::taylor_at_alpha(int k) {
    auto it = taylor_cache_.find(k);
    if (it == taylor_cache_.end())
        it = taylor_cache_.emplace(k, taylor_derivative(morphism_, alpha_, k)).first;
    return it->second;
}

MultilinearMap TransferContext::zero_b_map(int n) const {
    return MultilinearMap(n, source_words_.space, target_words_.space, 0, false);
}

MultilinearMap TransferContext::zero_like(int n, int shift) const {
    return MultilinearMap(n, source_words_.space, target_words_.space, shift, false);
}

WordSum TransferContext::d1_part(const Word& word) const {
    // Arity-preserving part of the twisted coderivation: single extractions.
    WordSum out;
    int n = word.arity();
    SignContext ctx = source_words_.sign_context(word.letters);
    for (int i = 1; i <= n; ++i) {
        Element value =
            q_alpha1_.apply_tuple(std::vector<int>{word.letters[i - 1]}).in_space(
                source_words_.space);
        if (value.is_zero()) continue;
        int sign = epsilon_insertion(ctx, 1, {i});
        std::vector<int> letters = word.letters;
        for (const auto& [idx, c] : value.terms()) {
            letters[i - 1] = idx;
            out.add(Word{WordKind::tensor, letters}, sign < 0 ? -c : c);
        }
    }
    return out;
}

WordSum TransferContext::d2_part(const Word& word) const {
    // Arity-dropping part: two-letter extractions through the quadratic
    // coefficient, the value sitting at the second extracted slot.
    WordSum out;
    int n = word.arity();
    if (n < 2) return out;
    SignContext ctx = source_words_.sign_context(word.letters);
    for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
            Element value = q_alpha2_
                                .apply_tuple(std::vector<int>{word.letters[i - 1],
                                                              word.letters[j - 1]})
                                .in_space(source_words_.space);
            if (value.is_zero()) continue;
            int sign = epsilon_insertion(ctx, 1, {i, j});
            std::vector<int> shape;
            shape.reserve(n - 1);
            int slot = -1;
            for (int p = 1; p <= n; ++p) {
                if (p == i) continue;
                if (p == j) {
                    slot = static_cast<int>(shape.size());
                    shape.push_back(-1);
                    continue;
                }
                shape.push_back(word.letters[p - 1]);
            }
            for (const auto& [idx, c] : value.terms()) {
                shape[slot] = idx;
                out.add(Word{WordKind::tensor, shape}, sign < 0 ? -c : c);
            }
        }
    }
    return out;
}

Element TransferContext::apply_b(const MultilinearMap& b, const WordSum& words) const {
    Element out(b.target());
    for (const auto& [w, c] : words.terms()) {
        if (w.arity() != b.arity()) continue;
        out += b.apply_tuple(w.letters).scale(c);
    }
    return out;
}

const MultilinearMap& TransferContext::b_term(int n, int j) {
    if (n < 1 || j < 0) throw std::invalid_argument("b_term needs n >= 1 and j >= 0");
    auto key = std::make_pair(n, j);
    auto it = b_cache_.find(key);
    if (it == b_cache_.end()) it = b_cache_.emplace(key, build_b_term(n, j)).first;
    return it->second;
}

MultilinearMap TransferContext::build_b_term(int n, int j) {
    if (j >= 1 && j > n - 2) return zero_b_map(n);

    const SpacePtr& Ws = source_words_.space;
    const SpacePtr& Wt = target_words_.space;

    if (j == 0) {
        MultilinearMap out = zero_b_map(n);
        if (n == 1) {
            const MultilinearMap& t1 = taylor_at_alpha(1);
            for (int i = 0; i < Ws->dim(); ++i) {
                Element value = t1.apply_tuple(std::vector<int>{i});
                if (!value.is_zero()) out.add_entry({i}, value.in_space(Wt));
            }
            return out;
        }
        const MultilinearMap& tn = taylor_at_alpha(n);
        for (const Word& w : source_words_.basis_words(n)) {
            std::vector<Element> args;
            args.reserve(n);
            long deg_sum = 0;
            for (int l = 0; l < n - 1; ++l) {
                args.push_back(
                    q_alpha1_.apply_tuple(std::vector<int>{w.letters[l]}).in_space(Vs_));
                deg_sum += Ws->degree(w.letters[l]);
            }
            args.push_back(Element::unit(Vs_, w.letters[n - 1], truncation_));
            Element value = tn.apply(args);
            if (value.is_zero()) continue;
            if (parity_sign(deg_sum) < 0) value = -value;
            out.add_entry(w.letters, value.in_space(Wt));
        }
        return out;
    }

    // recursion over the respectful two-block splittings
    MultilinearMap out = zero_b_map(n);
    for (const Word& w : source_words_.basis_words(n)) {
        SignContext ctx = source_words_.sign_context(w.letters);
        Element total(Vt_);
        for (const auto& partition : respectful_partitions(n, 2)) {
            int size_i = static_cast<int>(partition.blocks[0].size());
            int size_j = static_cast<int>(partition.blocks[1].size());
            if (size_i < 2) continue; // the (|I| - 1) factor kills singletons
            int eps = koszul_sign(ctx, partition);
            long deg_i = 0;
            std::vector<int> ti, tj;
            for (int p : partition.blocks[0]) {
                ti.push_back(w.letters[p - 1]);
                deg_i += Ws->degree(w.letters[p - 1]);
            }
            for (int p : partition.blocks[1]) tj.push_back(w.letters[p - 1]);

            Element inner(Vt_);
            for (int k = 0; k <= j - 1; ++k) {
                Element bi = b_term(size_i, k).apply_tuple(ti);
                if (bi.is_zero()) continue;
                Element bj = b_term(size_j, j - k - 1).apply_tuple(tj);
                if (bj.is_zero()) continue;
                inner += target_q2_.apply(
                    std::vector<Element>{bi.in_space(Vt_), bj.in_space(Vt_)});
            }
            if (inner.is_zero()) continue;
            int sign = eps * parity_sign(deg_i);
            total += inner.times(Rational(sign * (size_i - 1)));
        }
        if (!total.is_zero()) out.add_entry(w.letters, total.div_int(j).in_space(Wt));
    }
    return out;
}

MultilinearMap TransferContext::b_taylor(int n) {
    MultilinearMap out = b_term(n, 0);
    for (int j = 1; j <= n - 2; ++j) out = out + b_term(n, j);
    return out;
}

MultilinearMap TransferContext::defect(int n, int j) {
    if (n < 2) throw std::invalid_argument("defect needs n >= 2");
    const MultilinearMap& bn = b_term(n, j);
    const MultilinearMap& bn1 = b_term(n - 1, j);
    MultilinearMap out(n, source_words_.space, target_words_.space, 1, false);
    for (const Word& w : source_words_.basis_words(n)) {
        Element value = apply_b(bn, d1_part(w));
        value += apply_b(bn1, d2_part(w));
        Element top = bn.apply_tuple(w.letters);
        if (!top.is_zero()) value -= q_beta1_.apply(std::vector<Element>{top});
        if (!value.is_zero()) out.add_entry(w.letters, value);
    }
    return out;
}

MultilinearMap TransferContext::remainder(int n, int m) {
    if (n < 2 || m < 1) throw std::invalid_argument("remainder needs n >= 2 and m >= 1");
    const SpacePtr& Ws = source_words_.space;
    MultilinearMap out(n, source_words_.space, target_words_.space, 1, false);
    for (const Word& w : source_words_.basis_words(n)) {
        SignContext ctx = source_words_.sign_context(w.letters);
        Element total(Vt_);
        for (const auto& partition : respectful_partitions(n, 2)) {
            int size_i = static_cast<int>(partition.blocks[0].size());
            int size_j = static_cast<int>(partition.blocks[1].size());
            if (size_i < 2) continue;
            int eps = koszul_sign(ctx, partition);
            long deg_i = 0;
            std::vector<int> ti, tj;
            for (int p : partition.blocks[0]) {
                ti.push_back(w.letters[p - 1]);
                deg_i += Ws->degree(w.letters[p - 1]);
            }
            for (int p : partition.blocks[1]) tj.push_back(w.letters[p - 1]);
            WordSum twisted_i = d1_part(Word{WordKind::tensor, ti});

            Element inner(Vt_);
            for (int k = 0; k <= m - 1; ++k) {
                Element bi = apply_b(b_term(size_i, k), twisted_i);
                if (bi.is_zero()) continue;
                Element bj = b_term(size_j, m - k - 1).apply_tuple(tj);
                if (bj.is_zero()) continue;
                inner += target_q2_.apply(
                    std::vector<Element>{bi.in_space(Vt_), bj.in_space(Vt_)});
            }
            if (inner.is_zero()) continue;
            total += inner.times(Rational(eps * parity_sign(deg_i + 1)));
        }
        if (!total.is_zero()) out.add_entry(w.letters, total.in_space(target_words_.space));
    }
    return out;
}

MultilinearMap TransferContext::defect_expansion(int n, int j) {
    if (n < 2 || j < 0) throw std::invalid_argument("defect expansion needs n >= 2, j >= 0");
    const SpacePtr& Ws = source_words_.space;
    MultilinearMap out(n, source_words_.space, target_words_.space, 1, false);

    std::optional<MultilinearMap> rj, rj1;
    if (j >= 1) {
        rj = remainder(n, j);
        rj1 = remainder(n, j + 1);
    }

    for (const Word& w : source_words_.basis_words(n)) {
        SignContext ctx = source_words_.sign_context(w.letters);
        Element value(target_words_.space);
        for (const auto& partition : respectful_partitions(n, 2)) {
            int size_i = static_cast<int>(partition.blocks[0].size());
            int size_j = static_cast<int>(partition.blocks[1].size());
            std::vector<int> ti, tj;
            long deg_i = 0;
            for (int p : partition.blocks[0]) {
                ti.push_back(w.letters[p - 1]);
                deg_i += Ws->degree(w.letters[p - 1]);
            }
            for (int p : partition.blocks[1]) tj.push_back(w.letters[p - 1]);
            int eps = koszul_sign(ctx, partition);

            Element sum(target_words_.space);
            if (j == 0) {
                if (size_i == 1) {
                    Element bi = b_term(1, 0).apply_tuple(ti);
                    Element bj = b_term(n - 1, 0).apply_tuple(tj);
                    if (!bi.is_zero() && !bj.is_zero())
                        sum += q_beta2_.apply(std::vector<Element>{bi, bj});
                } else {
                    Element bi = apply_b(b_term(size_i, 0),
                                         d1_part(Word{WordKind::tensor, ti}));
                    Element bj = b_term(size_j, 0).apply_tuple(tj);
                    if (!bi.is_zero() && !bj.is_zero()) {
                        Element term = target_q2_
                                           .apply(std::vector<Element>{bi.in_space(Vt_),
                                                                       bj.in_space(Vt_)})
                                           .in_space(target_words_.space);
                        sum += parity_sign(deg_i) < 0 ? -term : term;
                    }
                }
            } else {
                if (size_i >= 2) {
                    for (int k = 0; k <= j - 1; ++k) {
                        Element bi = b_term(size_i, k).apply_tuple(ti);
                        Element bj = b_term(size_j, j - k - 1).apply_tuple(tj);
                        if (bi.is_zero() || bj.is_zero()) continue;
                        sum += q_beta2_.apply(std::vector<Element>{bi, bj});
                    }
                } else {
                    for (int k = 0; k <= j; ++k) {
                        Element bi = b_term(1, k).apply_tuple(ti);
                        Element bj = b_term(n - 1, j - k).apply_tuple(tj);
                        if (bi.is_zero() || bj.is_zero()) continue;
                        sum += q_beta2_.apply(std::vector<Element>{bi, bj});
                    }
                }
            }
            value += eps < 0 ? -sum : sum;
        }
        if (j >= 1) {
            value += rj->apply_tuple(w.letters);
            value -= rj1->apply_tuple(w.letters);
        }
        if (!value.is_zero()) out.add_entry(w.letters, value);
    }
    return out;
}

Element TransferContext::identity_residual(const std::vector<MultilinearMap>& b,
                                           const Word& word) {
    int n = word.arity();
    if (n < 1 || n > static_cast<int>(b.size()))
        throw std::invalid_argument("no Taylor coefficient for this arity");
    const SpacePtr& Wt = target_words_.space;

    Element lhs = apply_b(b[n - 1], d1_part(word));
    if (n >= 2) lhs += apply_b(b[n - 2], d2_part(word));

    Element rhs(Wt);
    Element top = b[n - 1].apply_tuple(word.letters);
    if (!top.is_zero()) rhs += q_beta1_.apply(std::vector<Element>{top});
    if (n >= 2) {
        SignContext ctx = source_words_.sign_context(word.letters);
        for (const auto& partition : respectful_partitions(n, 2)) {
            int size_i = static_cast<int>(partition.blocks[0].size());
            int size_j = static_cast<int>(partition.blocks[1].size());
            std::vector<int> ti, tj;
            for (int p : partition.blocks[0]) ti.push_back(word.letters[p - 1]);
            for (int p : partition.blocks[1]) tj.push_back(word.letters[p - 1]);
            Element bi = b[size_i - 1].apply_tuple(ti);
            if (bi.is_zero()) continue;
            Element bj = b[size_j - 1].apply_tuple(tj);
            if (bj.is_zero()) continue;
            int eps = koszul_sign(ctx, partition);
            Element term = q_beta2_.apply(std::vector<Element>{bi, bj});
            rhs += eps < 0 ? -term : term;
        }
    }
    return lhs - rhs;
}

TransferReport TransferContext::verify(int N) {
    TransferReport report;
    std::vector<MultilinearMap> b;
    for (int n = 1; n <= N; ++n) b.push_back(b_taylor(n));
    for (int n = 1; n <= N; ++n) {
        bool ok = true;
        std::string witness;
        for (const Word& w : source_words_.basis_words(n)) {
            Element residual = identity_residual(b, w);
            if (!residual.is_zero()) {
                ok = false;
                witness = word_witness(source_words_, w) + " -> " + residual.str();
                break;
            }
        }
        report.checks.push_back({"transfer_identity_arity_" + std::to_string(n), ok, witness});
        report.passed = report.passed && ok;
    }
    return report;
}

bool TransferContext::solvable_b3(const MultilinearMap& b1, const MultilinearMap& b2) {
    const SpacePtr& Ws = source_words_.space;
    const SpacePtr& Wt = target_words_.space;
    const int K = truncation_;

    std::map<std::pair<std::vector<int>, int>, int> var_of;
    std::vector<Word> words = source_words_.basis_words(3);
    for (const Word& w : words) {
        int want = 0;
        for (int l : w.letters) want += Ws->degree(l);
        for (int t = 0; t < Wt->dim(); ++t)
            if (Wt->degree(t) == want)
                var_of.emplace(std::make_pair(w.letters, t), static_cast<int>(var_of.size()));
    }

    std::vector<MultilinearMap> low{b1, b2, zero_b_map(3)};
    std::vector<ScalarEquation> equations;
    for (const Word& w : words) {
        Element constant = identity_residual(low, w); // the B3-free part
        std::map<int, std::map<int, Scalar>> linear;

        WordSum d1 = d1_part(w);
        for (const auto& [u, c] : d1.terms()) {
            for (int t = 0; t < Wt->dim(); ++t) {
                auto it = var_of.find({u.letters, t});
                if (it == var_of.end()) continue;
                auto [lin, inserted] = linear[t].try_emplace(it->second, c);
                if (!inserted) lin->second += c;
            }
        }
        for (int t = 0; t < Wt->dim(); ++t) {
            auto it = var_of.find({w.letters, t});
            if (it == var_of.end()) continue;
            Element image = q_beta1_.apply_tuple(std::vector<int>{t});
            for (const auto& [comp, s] : image.terms()) {
                auto [lin, inserted] = linear[comp].try_emplace(it->second, -s);
                if (!inserted) lin->second -= s;
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
    return solve_scalar_linear_system(equations, K).ok();
}

NegativeControlReport TransferContext::negative_control() {
    NegativeControlReport report;
    const SpacePtr& Ws = source_words_.space;
    const SpacePtr& Wt = target_words_.space;

    MultilinearMap b1 = b_taylor(1);
    MultilinearMap b2 = b_taylor(2);
    MultilinearMap b3 = b_taylor(3);

    // Perturbation (x,y) -> (-1)^{|x||y|} [B_1(x), B_1(y)]': the bracket-type
    // coboundary, dressed so the twisted target differential still acts as a
    // derivation on it (the arity-2 identity survives; order 3 breaks).
    const AlgebraStructure& target = morphism_.target;
    MultilinearMap pert = zero_b_map(2);
    for (int i = 0; i < Ws->dim(); ++i) {
        Element bi = b1.apply_tuple(std::vector<int>{i});
        if (bi.is_zero()) continue;
        for (int j = 0; j < Ws->dim(); ++j) {
            Element bj = b1.apply_tuple(std::vector<int>{j});
            if (bj.is_zero()) continue;
            Element value = target.apply_bracket(bi.in_space(target.space),
                                                 bj.in_space(target.space));
            if (value.is_zero()) continue;
            long exponent = static_cast<long>(Ws->degree(i)) * Ws->degree(j);
            if (exponent & 1) value = -value;
            pert.add_entry({i, j}, value.in_space(Wt));
        }
    }
    report.conclusive = !pert.is_zero();
    if (!report.conclusive) {
        report.witness = "perturbation vanishes identically";
        return report;
    }

    MultilinearMap b2p = b2 + pert;
    std::vector<MultilinearMap> perturbed{b1, b2p, b3};
    std::vector<MultilinearMap> clean{b1, b2, b3};

    report.order2_passes = true;
    for (const Word& w : source_words_.basis_words(2))
        if (!identity_residual(perturbed, w).is_zero()) report.order2_passes = false;

    report.order3_nonzero = false;
    for (const Word& w : source_words_.basis_words(3)) {
        Element residual = identity_residual(perturbed, w);
        if (!residual.is_zero()) {
            report.order3_nonzero = true;
            report.witness = word_witness(source_words_, w) + " -> " + residual.str();
            break;
        }
    }

    report.unperturbed_passes = true;
    for (int n = 2; n <= 3; ++n)
        for (const Word& w : source_words_.basis_words(n))
            if (!identity_residual(clean, w).is_zero()) report.unperturbed_passes = false;

    report.replacement_b3_exists = solvable_b3(b1, b2p);
    report.unperturbed_solvable = solvable_b3(b1, b2);
    return report;
}

} // namespace leibcheck
