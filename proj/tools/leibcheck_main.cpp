#include <CLI11.hpp>

#include "leibcheck/description.hpp"
#include "leibcheck/fixtures.hpp"
#include "leibcheck/suites.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>

namespace {

namespace fs = std::filesystem;
using namespace leibcheck;

int write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot write " << path << "\n";
        return 1;
    }
    out << text;
    return 0;
}

Session session_from_fixture(const AlgebraStructure& alg, std::optional<Element> mc,
                             std::optional<LinfMorphism> morphism,
                             std::optional<int> completed_to) {
    Session session;
    session.truncation = alg.truncation;
    session.structures.emplace(alg.name, alg);
    if (morphism) {
        session.structures.emplace(morphism->target.name, morphism->target);
        session.morphism = std::move(morphism);
        session.morphism_completed_to = completed_to;
    }
    if (mc) {
        session.mc_structure = alg.name;
        session.mc_element = std::move(mc);
    }
    return session;
}

int generate_fixtures(const fs::path& directory, int truncation) {
    fs::create_directories(directory);
    const int K = truncation;

    AlgebraStructure g4 = fixtures::dgla4(K);
    Element alpha = fixtures::dgla4_mc(g4);
    AlgebraStructure g5 = fixtures::dgla5(K);
    AlgebraStructure h4 = fixtures::abelian_bracket4(K);

    int rc = 0;
    {
        Session s = session_from_fixture(g4, alpha, identity_morphism(g4), std::nullopt);
        rc |= write_file(directory / "g4_identity.json", describe_session(s));
    }
    {
        Session s = session_from_fixture(g4, alpha, fixtures::strict_inclusion(g4, g5),
                                         std::nullopt);
        rc |= write_file(directory / "g4_strict.json", describe_session(s));
    }
    {
        // stored seed: the linear part only; the loader completes it by solving
        LinfMorphism solver = fixtures::solver_morphism(g4, h4, 1);
        Session s = session_from_fixture(g4, alpha, solver, std::nullopt);
        s.morphism_complete_request = 8;
        rc |= write_file(directory / "g4_solver.json", describe_session(s));
    }
    {
        LinfMorphism twisted = fixtures::twisted_morphism(g4, 2);
        Session s = session_from_fixture(g4, alpha, twisted, std::nullopt);
        s.morphism_complete_request = 8;
        rc |= write_file(directory / "g4_twisted.json", describe_session(s));
    }
    {
        AlgebraStructure n3 = fixtures::nilpotent3(K);
        Element mc(n3.space);
        mc.add_term(1, Scalar::monomial(Rational(1), 1, K));
        Session s = session_from_fixture(n3, mc, std::nullopt, std::nullopt);
        rc |= write_file(directory / "nilpotent3.json", describe_session(s));
    }
    {
        AlgebraStructure l3 = fixtures::leibniz3(K);
        Element mc(l3.space);
        mc.add_term(1, Scalar::monomial(Rational(1), 1, K)); // t v: closed and square-free
        Session s = session_from_fixture(l3, mc, std::nullopt, std::nullopt);
        rc |= write_file(directory / "leibniz3.json", describe_session(s));
    }
    {
        AlgebraStructure a1 = fixtures::abelian1(K);
        Element mc(a1.space);
        mc.add_term(0, Scalar::monomial(Rational(1), 1, K));
        Session s = session_from_fixture(a1, mc, identity_morphism(a1), std::nullopt);
        rc |= write_file(directory / "abelian.json", describe_session(s));
    }
    {
        // deliberately broken: the Jacobi-Leibniz identity fails
        AlgebraStructure l3 = fixtures::leibniz3_flex(K);
        MultilinearMap bad = l3.bracket;
        Element v(l3.space);
        v.add_term(2, Scalar::one(K));
        bad.add_entry({1, 2}, v); // [b,c] = c breaks the identity
        AlgebraStructure broken =
            make_structure("broken", Flavor::leibniz, l3.space, l3.d, bad, K);
        Session s = session_from_fixture(broken, std::nullopt, std::nullopt, std::nullopt);
        rc |= write_file(directory / "broken_leibniz.json", describe_session(s));
    }
    return rc;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact verifier for differential graded Leibniz transfer constructions"};
    app.require_subcommand(0, 1);

    std::string input;
    int max_arity = 5;
    int truncation_flag = 0;
    std::vector<std::string> suites;
    unsigned long long seed = 1;
    std::string report_path;
    std::string emit_b_path;
    bool no_validate = false;

    app.add_option("--input", input, "description file to load");
    app.add_option("--max-arity", max_arity, "largest word arity to check")->check(CLI::Range(2, 8));
    app.add_option("--truncation", truncation_flag,
                   "override the file's truncation order (t^K = 0)");
    app.add_option("--suite", suites, "suite name or 'all' (repeatable)");
    app.add_option("--seed", seed, "seed for the randomized mutation suite");
    app.add_option("--report", report_path, "write the machine-readable report here");
    app.add_option("--emit-b", emit_b_path, "write the computed transfer tables here");
    app.add_flag("--no-validate-on-load", no_validate, "skip identity checks while loading");

    auto* gen = app.add_subcommand("gen-fixtures", "regenerate the bundled fixture files");
    std::string gen_dir = "fixtures";
    int gen_truncation = 4;
    gen->add_option("--out", gen_dir, "output directory");
    gen->add_option("--truncation", gen_truncation, "truncation order for the fixtures");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e);
        return 0;
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (gen->parsed()) return generate_fixtures(gen_dir, gen_truncation) == 0 ? 0 : 1;

    if (input.empty()) {
        std::cerr << "error: --input is required\n";
        return 2;
    }

    LoadOptions options;
    options.validate = !no_validate;
    if (truncation_flag > 0) options.truncation_override = truncation_flag;

    SuiteConfig config;
    config.max_arity = max_arity;
    config.seed = seed;
    config.suites = suites;

    try {
        Session session = load_description(input, options);
        RunResult result = run_suites(session, config);
        std::cout << result.text_report();
        if (!report_path.empty()) {
            if (write_file(report_path, result.json_report(config, input)) != 0) return 1;
        }
        if (!emit_b_path.empty()) {
            BTables tables = compute_b_tables(session, max_arity);
            if (write_file(emit_b_path, describe_b_tables(tables)) != 0) return 1;
        }
        return result.exit_code();
    } catch (const ValidationError& err) {
        std::cerr << "validation failure: " << err.check;
        if (!err.witness.empty()) std::cerr << " at " << err.witness;
        std::cerr << "\n";
        return 1;
    } catch (const DescriptionError& err) {
        std::cerr << "input error: " << err.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
}
