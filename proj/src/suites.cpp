#include "leibcheck/suites.hpp"

#include "leibcheck/fixtures.hpp"

#include <json.hpp>

#include <algorithm>
#include <random>
#include <sstream>

namespace leibcheck {

namespace {

const char* status_text(CheckStatus s) {
    switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "FAIL";
    case CheckStatus::skip: return "skip";
    case CheckStatus::inconclusive: return "inconclusive";
    }
    return "?";
}

long stirling2(int n, int j) {
    if (n == 0 && j == 0) return 1;
    if (n == 0 || j == 0 || j > n) return 0;
    return j * stirling2(n - 1, j) + stirling2(n - 1, j - 1);
}

class Runner {
public:
    Runner(const Session& session, const SuiteConfig& config)
        : session_(session), config_(config) {}

    SuiteResult combinatorics();
    SuiteResult coalgebra();
    SuiteResult structure();
    SuiteResult mutation();
    SuiteResult derived();
    SuiteResult mc_image_suite();
    SuiteResult expansion();
    SuiteResult theorem();
    SuiteResult negative();

private:
    const Session& session_;
    const SuiteConfig& config_;
    std::optional<TransferContext> transfer_;
    bool transfer_failed_ = false;
    std::string transfer_error_;

    TransferContext* transfer();
    void add(SuiteResult& out, std::string name, bool passed, std::string witness = "") {
        out.checks.push_back(
            {std::move(name), passed ? CheckStatus::pass : CheckStatus::fail,
             std::move(witness)});
    }
    static SuiteResult skipped(std::string name, std::string reason) {
        SuiteResult out{std::move(name), {}};
        out.checks.push_back({"prerequisites", CheckStatus::skip, std::move(reason)});
        return out;
    }
};

TransferContext* Runner::transfer() {
    if (transfer_failed_) return nullptr;
    if (!transfer_) {
        if (!session_.morphism || !session_.mc_element ||
            session_.mc_structure != session_.morphism->source.name) {
            transfer_failed_ = true;
            transfer_error_ = "needs a morphism and a Maurer-Cartan element of its source";
            return nullptr;
        }
        try {
            transfer_.emplace(*session_.morphism, *session_.mc_element, config_.max_arity);
        } catch (const std::exception& err) {
            transfer_failed_ = true;
            transfer_error_ = err.what();
            return nullptr;
        }
    }
    return &*transfer_;
}

SuiteResult Runner::combinatorics() {
    SuiteResult out{"combinatorics", {}};
    bool stirling_ok = true, bell_ok = true, two_block_ok = true;
    std::string witness;
    for (int n = 1; n <= 8; ++n) {
        long total = 0;
        for (int j = 1; j <= n; ++j) {
            long count = static_cast<long>(respectful_partitions(n, j).size());
            if (count != stirling2(n, j)) {
                stirling_ok = false;
                witness = "n=" + std::to_string(n) + " j=" + std::to_string(j);
            }
            total += count;
        }
        long bell = 0;
        for (int j = 1; j <= n; ++j) bell += stirling2(n, j);
        if (total != bell) bell_ok = false;
        if (static_cast<long>(two_block_partitions(n).size()) != (1L << n) - 2)
            two_block_ok = false;
    }
    add(out, "respectful_counts_are_stirling", stirling_ok, witness);
    add(out, "respectful_totals_are_bell", bell_ok);
    add(out, "two_block_counts", two_block_ok);
    return out;
}

SuiteResult Runner::coalgebra() {
    SuiteResult out{"coalgebra", {}};
    const int K = session_.truncation;
    SpacePtr V = make_space("V", {{"a", 0}, {"b", 1}, {"c", 2}});
    for (WordKind kind : {WordKind::tensor, WordKind::symmetric}) {
        Coalgebra c{kind, V};
        const char* tag = kind == WordKind::tensor ? "tensor" : "symmetric";
        bool coassoc = true, cocomm = true;
        std::string witness;
        for (int n = 1; n <= 5; ++n) {
            for (const Word& w : c.basis_words(n)) {
                if (!check_coassociativity(c, w, K)) {
                    coassoc = false;
                    witness = "arity " + std::to_string(n);
                }
                if (!check_cocommutativity(c, w, K)) cocomm = false;
            }
        }
        add(out, std::string("coassociativity_") + tag, coassoc, witness);
        add(out, std::string("cocommutativity_") + tag, cocomm);
    }
    return out;
}

SuiteResult Runner::structure() {
    SuiteResult out{"structure", {}};
    if (session_.structures.empty()) return skipped("structure", "no structures loaded");
    for (const auto& [name, alg] : session_.structures) {
        StructureReport report = check_structure(alg);
        for (const auto& check : report.checks)
            add(out, name + "." + check.name, check.passed, check.witness);
    }
    return out;
}

SuiteResult Runner::mutation() {
    SuiteResult out{"mutation", {}};
    const int K = session_.truncation;
    AlgebraStructure base = fixtures::leibniz3_flex(K);

    struct Mutation {
        bool bracket;
        std::vector<int> inputs;
        int target;
    };
    std::vector<Mutation> admissible;
    for (int i = 0; i < base.space->dim(); ++i) {
        for (int j = 0; j < base.space->dim(); ++j)
            for (int t = 0; t < base.space->dim(); ++t)
                if (base.space->degree(t) == base.space->degree(i) + base.space->degree(j))
                    admissible.push_back({true, {i, j}, t});
        for (int t = 0; t < base.space->dim(); ++t)
            if (base.space->degree(t) == base.space->degree(i) + 1)
                admissible.push_back({false, {i}, t});
    }

    std::mt19937_64 rng(config_.seed);
    int broken = 0;
    bool all_equivalent = true;
    std::string witness;
    for (int trial = 0; trial < config_.mutation_trials; ++trial) {
        const Mutation& m = admissible[rng() % admissible.size()];
        long delta = 1 + static_cast<long>(rng() % 3);
        Element v(base.space);
        v.add_term(m.target, Scalar::constant(Rational(delta), K));
        MultilinearMap b = base.bracket;
        MultilinearMap d = base.d;
        if (m.bracket) b.add_entry(m.inputs, v);
        else d.add_entry(m.inputs, v);
        AlgebraStructure mutated =
            make_structure("mutant", Flavor::leibniz, base.space, d, b, K);
        StructureReport report = check_structure(mutated);
        if (!report.equivalence) {
            all_equivalent = false;
            witness = "trial " + std::to_string(trial);
        }
        if (!report.identities_pass) ++broken;
    }
    add(out, "identity_matches_coderivation_verdict", all_equivalent, witness);
    add(out, "mutations_break_structures", broken > 0,
        "broken " + std::to_string(broken) + "/" + std::to_string(config_.mutation_trials));
    return out;
}

SuiteResult Runner::derived() {
    SuiteResult out{"derived", {}};
    if (!session_.mc_element) return skipped("derived", "no Maurer-Cartan element loaded");
    const AlgebraStructure* alg = session_.structure(*session_.mc_structure);

    MCReport mc = mc_check(*alg, *session_.mc_element);
    add(out, "twisted_differential_squares_to_zero", mc.twisted_square_zero);
    add(out, "residual_brackets_vanish", mc.residual_bracket_zero);
    add(out, "square_zero_equivalence", mc.equivalence);
    if (alg->flavor == Flavor::lie)
        add(out, "maurer_cartan_residual_zero", mc.is_mc, mc.residual.str());

    try {
        AlgebraStructure derived = derived_structure(*alg, *session_.mc_element);
        StructureReport report = check_structure(derived);
        bool ok = true;
        std::string witness;
        for (const auto& check : report.checks)
            if (!check.passed) {
                ok = false;
                witness = check.name;
            }
        add(out, "derived_structure_identities", ok, witness);

        CoalgebraOperator q = derived_coderivation(*alg, *session_.mc_element);
        add(out, "twisted_coefficient_bridge", true); // construction throws on mismatch
        bool square = true;
        Coalgebra c = q.source();
        for (int n = 1; n <= std::min(config_.max_arity, 4) && square; ++n)
            for (const Word& w : c.basis_words(n))
                if (!q.apply(q.apply_word(w)).is_zero()) square = false;
        add(out, "twisted_coderivation_squares_to_zero", square);
    } catch (const std::exception& err) {
        add(out, "derived_structure", false, err.what());
    }
    return out;
}

SuiteResult Runner::mc_image_suite() {
    SuiteResult out{"mc-image", {}};
    TransferContext* ctx = transfer();
    if (!ctx) return skipped("mc-image", transfer_error_.empty() ? "needs transfer data"
                                                                 : transfer_error_);
    const LinfMorphism& morphism = ctx->morphism();
    MCReport mc = mc_check(morphism.target, ctx->beta());
    add(out, "image_is_maurer_cartan", mc.is_mc, mc.residual.str());

    const int K = session_.truncation;
    Coalgebra cs = structure_coalgebra(morphism.source);
    Coalgebra ct = structure_coalgebra(morphism.target);
    CoalgebraOperator F = morphism_operator(morphism);
    WordSum lhs = F.apply(group_like_exp(cs, ctx->alpha().in_space(cs.space), K));
    WordSum rhs = group_like_exp(ct, ctx->beta().in_space(ct.space), K);
    bool group_like = true;
    for (int len = 1; len <= 4; ++len)
        if (lhs.arity_part(len) != rhs.arity_part(len)) group_like = false;
    add(out, "exponential_image_identity", group_like);

    // first derivative is a chain map for the twisted differentials
    bool chain = true;
    const MultilinearMap& t1 = ctx->taylor_at_alpha(1);
    const SpacePtr& Vs = morphism.source.coalgebra_space;
    for (int i = 0; i < morphism.source.space->dim() && chain; ++i) {
        Element lhs_el = t1.apply(std::vector<Element>{
            ctx->q_alpha1().apply_tuple(std::vector<int>{i}).in_space(Vs)});
        Element rhs_el = ctx->q_beta1().apply(std::vector<Element>{
            t1.apply_tuple(std::vector<int>{i}).in_space(ctx->target_words().space)});
        if (lhs_el.terms() != rhs_el.terms()) chain = false;
    }
    add(out, "first_derivative_chain_map", chain);
    return out;
}

SuiteResult Runner::expansion() {
    SuiteResult out{"expansion", {}};
    TransferContext* ctx = transfer();
    if (!ctx) return skipped("expansion", transfer_error_.empty() ? "needs transfer data"
                                                                  : transfer_error_);
    auto compare = [&](const MultilinearMap& lhs, const MultilinearMap& rhs,
                       std::string name) {
        if (lhs == rhs) {
            add(out, std::move(name), true);
            return;
        }
        // locate the first differing entry and report its exact residual
        std::string witness = "maps differ";
        for (const Word& w : ctx->source_words().basis_words(lhs.arity())) {
            Element diff = lhs.apply_tuple(w.letters) - rhs.apply_tuple(w.letters);
            if (!diff.is_zero()) {
                std::string letters;
                for (size_t i = 0; i < w.letters.size(); ++i) {
                    if (i) letters += "(x)";
                    letters += ctx->source_words().space->name(w.letters[i]);
                }
                witness = letters + " -> " + diff.str();
                break;
            }
        }
        add(out, std::move(name), false, witness);
    };
    int N = config_.max_arity;
    for (int n = 2; n <= N; ++n)
        compare(ctx->defect(n, 0), ctx->defect_expansion(n, 0),
                "base_defect_expansion_n" + std::to_string(n));
    for (int j = 1; j <= 3; ++j)
        for (int n = j + 2; n <= N; ++n)
            compare(ctx->defect(n, j), ctx->defect_expansion(n, j),
                    "step_defect_expansion_n" + std::to_string(n) + "_j" + std::to_string(j));

    // spot-check the two precomposition expansions at (3,1) and (4,1)
    const Coalgebra& src = ctx->source_words();
    const SpacePtr Ws = src.space;
    const SpacePtr& Vt = ctx->morphism().target.coalgebra_space;
    for (auto [n, j] : std::vector<std::pair<int, int>>{{3, 1}, {4, 1}}) {
        bool first_ok = true, second_ok = true;
        for (const Word& w : src.basis_words(n)) {
            SignContext sctx = src.sign_context(w.letters);

            Element lhs1 = ctx->apply_to_d1(ctx->b_term(n, j), w).times(Rational(j));
            Element lhs2 =
                ctx->apply_b(ctx->b_term(n - 1, j), ctx->d2_part(w)).times(Rational(j));
            Element want1(ctx->target_words().space);
            Element want2(ctx->target_words().space);
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
                int eps = koszul_sign(sctx, partition);
                Word wi{WordKind::tensor, ti}, wj{WordKind::tensor, tj};
                int sign_i = (deg_i & 1) ? -1 : 1;

                for (int k = 0; k <= j - 1; ++k) {
                    // first relation: the twisted differential walks into
                    // either factor
                    Element a1 = ctx->apply_to_d1(ctx->b_term(size_i, k), wi);
                    Element b1 = ctx->b_term(size_j, j - k - 1).apply_tuple(tj);
                    if (!a1.is_zero() && !b1.is_zero())
                        want1 += ctx->target_q2()
                                     .apply(std::vector<Element>{a1.in_space(Vt),
                                                                  b1.in_space(Vt)})
                                     .in_space(ctx->target_words().space)
                                     .times(Rational(-sign_i * eps * (size_i - 1)));
                    Element a2 = ctx->b_term(size_i, k).apply_tuple(ti);
                    Element b2 = ctx->apply_to_d1(ctx->b_term(size_j, j - k - 1), wj);
                    if (!a2.is_zero() && !b2.is_zero())
                        want1 += ctx->target_q2()
                                     .apply(std::vector<Element>{a2.in_space(Vt),
                                                                  b2.in_space(Vt)})
                                     .in_space(ctx->target_words().space)
                                     .times(Rational(eps * (size_i - 1)));

                    // second relation: the derived bracket part contracts a
                    // factor
                    if (size_i >= 2) {
                        Element c1 = ctx->apply_b(ctx->b_term(size_i - 1, k),
                                                  ctx->d2_part(wi));
                        Element d1 = ctx->b_term(size_j, j - k - 1).apply_tuple(tj);
                        if (!c1.is_zero() && !d1.is_zero())
                            want2 += ctx->target_q2()
                                         .apply(std::vector<Element>{c1.in_space(Vt),
                                                                      d1.in_space(Vt)})
                                         .in_space(ctx->target_words().space)
                                         .times(Rational(-sign_i * eps * (size_i - 2)));
                    }
                    if (size_j >= 2) {
                        Element c2 = ctx->b_term(size_i, k).apply_tuple(ti);
                        Element d2 = ctx->apply_b(ctx->b_term(size_j - 1, j - k - 1),
                                                  ctx->d2_part(wj));
                        if (!c2.is_zero() && !d2.is_zero())
                            want2 += ctx->target_q2()
                                         .apply(std::vector<Element>{c2.in_space(Vt),
                                                                      d2.in_space(Vt)})
                                         .in_space(ctx->target_words().space)
                                         .times(Rational(eps * (size_i - 1)));
                    }
                }
            }
            if (lhs1 != want1) first_ok = false;
            if (lhs2 != want2) second_ok = false;
        }
        std::string tag = "_n" + std::to_string(n) + "_j" + std::to_string(j);
        add(out, "precompose_d1_expansion" + tag, first_ok);
        add(out, "precompose_d2_expansion" + tag, second_ok);
    }
    return out;
}

SuiteResult Runner::theorem() {
    SuiteResult out{"theorem", {}};
    TransferContext* ctx = transfer();
    if (!ctx) return skipped("theorem", transfer_error_.empty() ? "needs transfer data"
                                                                : transfer_error_);
    TransferReport report = ctx->verify(config_.max_arity);
    for (const auto& check : report.checks) add(out, check.name, check.passed, check.witness);
    return out;
}

SuiteResult Runner::negative() {
    SuiteResult out{"negative-control", {}};
    TransferContext* ctx = transfer();
    if (!ctx) return skipped("negative-control", transfer_error_.empty()
                                                     ? "needs transfer data"
                                                     : transfer_error_);
    NegativeControlReport report = ctx->negative_control();
    if (!report.conclusive) {
        out.checks.push_back({"perturbation_nonzero", CheckStatus::inconclusive,
                              report.witness});
        return out;
    }
    add(out, "perturbation_nonzero", true);
    add(out, "perturbed_order2_still_holds", report.order2_passes);
    add(out, "perturbed_order3_residual_nonzero", report.order3_nonzero, report.witness);
    add(out, "unperturbed_orders_pass", report.unperturbed_passes);
    add(out, "unperturbed_order3_solvable", report.unperturbed_solvable);
    out.checks.push_back({"replacement_b3_exists",
                          report.replacement_b3_exists ? CheckStatus::inconclusive
                                                       : CheckStatus::pass,
                          report.replacement_b3_exists
                              ? "another arity-3 coefficient absorbs this perturbation here"
                              : ""});
    return out;
}

} // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {
        "combinatorics", "coalgebra", "structure", "mutation", "derived",
        "mc-image",      "expansion", "theorem",   "negative-control"};
    return names;
}

int RunResult::failures() const {
    int count = 0;
    for (const auto& suite : suites)
        for (const auto& check : suite.checks)
            if (check.status == CheckStatus::fail) ++count;
    return count;
}

std::string RunResult::text_report() const {
    std::ostringstream os;
    int pass = 0, fail = 0, skip = 0, inconclusive = 0;
    for (const auto& suite : suites) {
        os << "== " << suite.name << "\n";
        for (const auto& check : suite.checks) {
            os << "  [" << status_text(check.status) << "] " << check.name;
            if (!check.witness.empty()) os << " -- " << check.witness;
            os << "\n";
            switch (check.status) {
            case CheckStatus::pass: ++pass; break;
            case CheckStatus::fail: ++fail; break;
            case CheckStatus::skip: ++skip; break;
            case CheckStatus::inconclusive: ++inconclusive; break;
            }
        }
    }
    os << "summary: " << pass << " passed, " << fail << " failed, " << skip << " skipped, "
       << inconclusive << " inconclusive\n";
    return os.str();
}

std::string RunResult::json_report(const SuiteConfig& config, const std::string& input) const {
    nlohmann::ordered_json doc;
    doc["schema_version"] = 1;
    doc["input"] = input;
    doc["max_arity"] = config.max_arity;
    doc["seed"] = config.seed;
    nlohmann::ordered_json suites_json = nlohmann::ordered_json::array();
    for (const auto& suite : suites) {
        nlohmann::ordered_json node;
        node["suite"] = suite.name;
        nlohmann::ordered_json checks = nlohmann::ordered_json::array();
        for (const auto& check : suite.checks)
            checks.push_back({{"name", check.name},
                              {"status", status_text(check.status)},
                              {"witness", check.witness}});
        node["checks"] = std::move(checks);
        suites_json.push_back(std::move(node));
    }
    doc["suites"] = std::move(suites_json);
    doc["failures"] = failures();
    doc["exit_code"] = exit_code();
    return doc.dump(2) + "\n";
}

RunResult run_suites(const Session& session, const SuiteConfig& config) {
    std::vector<std::string> selected = config.suites;
    if (selected.empty() ||
        std::find(selected.begin(), selected.end(), "all") != selected.end())
        selected = suite_names();
    for (const auto& name : selected)
        if (std::find(suite_names().begin(), suite_names().end(), name) == suite_names().end())
            throw std::invalid_argument("unknown suite '" + name + "'");

    Runner runner(session, config);
    RunResult result;
    for (const auto& name : suite_names()) {
        if (std::find(selected.begin(), selected.end(), name) == selected.end()) continue;
        if (name == "combinatorics") result.suites.push_back(runner.combinatorics());
        else if (name == "coalgebra") result.suites.push_back(runner.coalgebra());
        else if (name == "structure") result.suites.push_back(runner.structure());
        else if (name == "mutation") result.suites.push_back(runner.mutation());
        else if (name == "derived") result.suites.push_back(runner.derived());
        else if (name == "mc-image") result.suites.push_back(runner.mc_image_suite());
        else if (name == "expansion") result.suites.push_back(runner.expansion());
        else if (name == "theorem") result.suites.push_back(runner.theorem());
        else if (name == "negative-control") result.suites.push_back(runner.negative());
    }
    return result;
}

BTables compute_b_tables(const Session& session, int max_arity) {
    if (!session.morphism || !session.mc_element)
        throw std::invalid_argument("the session carries no transfer data");
    TransferContext ctx(*session.morphism, *session.mc_element, max_arity);
    // Tables are only emitted once the transfer identity has been confirmed.
    TransferReport verified = ctx.verify(max_arity);
    if (!verified.passed)
        throw std::invalid_argument("transfer identity fails; refusing to emit tables");
    BTables tables;
    tables.truncation = session.truncation;
    tables.source = ctx.source_words().space;
    tables.target = ctx.target_words().space;
    for (int n = 1; n <= max_arity; ++n) {
        tables.taylor.push_back(ctx.b_taylor(n));
        for (int j = 0; j == 0 || j <= n - 2; ++j)
            tables.terms.emplace(std::make_pair(n, j), ctx.b_term(n, j));
    }
    return tables;
}

} // namespace leibcheck
