#include "doctest.h"

#include "leibcheck/description.hpp"
#include "leibcheck/fixtures.hpp"
#include "leibcheck/suites.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

using namespace leibcheck;
namespace fx = leibcheck::fixtures;

#ifndef LEIBCHECK_FIXTURE_DIR
#define LEIBCHECK_FIXTURE_DIR "fixtures"
#endif
#ifndef LEIBCHECK_CLI_PATH
#define LEIBCHECK_CLI_PATH "leibcheck"
#endif

namespace {

std::string fixture(const std::string& name) {
    return std::string(LEIBCHECK_FIXTURE_DIR) + "/" + name;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

int run_cli(const std::string& args) {
    std::string command = std::string(LEIBCHECK_CLI_PATH) + " " + args;
    int status = std::system(command.c_str());
    return WEXITSTATUS(status);
}

} // namespace

TEST_CASE("bundled fixtures load and match their in-code counterparts") {
    Session session = load_description(fixture("g4_identity.json"));
    CHECK(session.truncation == 4);
    const AlgebraStructure* g = session.structure("g");
    REQUIRE(g);
    AlgebraStructure expected = fx::dgla4(4);
    CHECK(g->d.entries() == expected.d.entries());
    CHECK(g->bracket.entries() == expected.bracket.entries());
    REQUIRE(session.mc_element);
    CHECK(session.mc_element->terms() == fx::dgla4_mc(expected).terms());
    REQUIRE(session.morphism);
    CHECK(session.morphism->max_arity() == 1);
}

TEST_CASE("completion request is honored on load") {
    Session session = load_description(fixture("g4_twisted.json"));
    REQUIRE(session.morphism);
    CHECK(session.morphism->max_arity() == 8);
    CHECK(session.morphism->coefficient(2) != nullptr);
    CHECK(session.morphism_completed_to == 8);
}

TEST_CASE("session serialization round-trips") {
    Session session = load_description(fixture("nilpotent3.json"));
    std::string text = describe_session(session);
    Session reloaded = load_description_text(text);
    CHECK(describe_session(reloaded) == text);
    const AlgebraStructure* a = session.structure("n3");
    const AlgebraStructure* b = reloaded.structure("n3");
    REQUIRE(a);
    REQUIRE(b);
    CHECK(a->d.entries() == b->d.entries());
    CHECK(a->bracket.entries() == b->bracket.entries());
}

TEST_CASE("malformed documents are rejected with positions") {
    CHECK_THROWS_AS(load_description_text("{ not json"), DescriptionError);
    CHECK_THROWS_AS(load_description_text("{}"), DescriptionError);

    // a zero denominator is a parse error
    std::string bad = R"({"schema_version":1,"truncation_order":2,
        "spaces":{"g":[{"name":"x","degree":1}]},
        "structures":{"g":{"flavor":"lie","space":"g",
          "d":[{"inputs":["x"],"output":[{"basis":"x","coeff":"1/0"}]}]}}})";
    CHECK_THROWS_AS(load_description_text(bad), std::exception);

    // unknown basis names are schema violations
    std::string unknown = R"({"schema_version":1,"truncation_order":2,
        "spaces":{"g":[{"name":"x","degree":1}]},
        "structures":{"g":{"flavor":"lie","space":"g",
          "d":[{"inputs":["y"],"output":[]}]}}})";
    CHECK_THROWS_AS(load_description_text(unknown), DescriptionError);
}

TEST_CASE("validation failures carry the check and a witness") {
    try {
        load_description(fixture("broken_leibniz.json"));
        FAIL("expected a validation error");
    } catch (const ValidationError& err) {
        CHECK(err.check.find("broken.") == 0);
        CHECK(!err.witness.empty());
    }
    // suppressing validation loads the same file
    LoadOptions options;
    options.validate = false;
    Session session = load_description(fixture("broken_leibniz.json"), options);
    CHECK(session.structure("broken"));
}

TEST_CASE("coefficient literals") {
    std::string doc = R"({"schema_version":1,"truncation_order":3,
        "spaces":{"g":[{"name":"x","degree":1},{"name":"y","degree":2}]},
        "structures":{"g":{"flavor":"lie","space":"g",
          "d":[{"inputs":["x"],"output":[
            {"basis":"y","coeff":"1/2"},
            {"basis":"y","coeff":"-3 t^2"},
            {"basis":"y","coeff":"1 t"}]}]}}})";
    Session session = load_description_text(doc);
    Element dx = session.structure("g")->apply_d(
        Element::unit(session.structure("g")->space, 0, 3));
    Scalar expected = Scalar::constant(Rational(1, 2), 3) +
                      Scalar::monomial(Rational(1), 1, 3) +
                      Scalar::monomial(Rational(-3), 2, 3);
    REQUIRE(dx.terms().count(1));
    CHECK(dx.terms().at(1) == expected);
}

TEST_CASE("transfer tables serialize and reload identically") {
    Session session = load_description(fixture("g4_identity.json"));
    BTables tables = compute_b_tables(session, 3);
    std::string text = describe_b_tables(tables);
    BTables reloaded = load_b_tables_text(text);
    REQUIRE(reloaded.taylor.size() == tables.taylor.size());
    for (size_t n = 0; n < tables.taylor.size(); ++n)
        CHECK(reloaded.taylor[n].entries() == tables.taylor[n].entries());
    REQUIRE(reloaded.terms.size() == tables.terms.size());
    for (const auto& [key, map] : tables.terms)
        CHECK(reloaded.terms.at(key).entries() == map.entries());
    CHECK(describe_b_tables(reloaded) == text);
}

TEST_CASE("truncation override reinterprets the session") {
    LoadOptions options;
    options.truncation_override = 3;
    Session session = load_description(fixture("g4_identity.json"), options);
    CHECK(session.truncation == 3);
    // the stored Maurer-Cartan element stays valid after truncation
    REQUIRE(session.mc_element);
    CHECK(mc_check(*session.structure("g"), *session.mc_element).is_mc);

    SuiteConfig config;
    config.suites = {"theorem"};
    config.max_arity = 4;
    CHECK(run_suites(session, config).exit_code() == 0);
}

TEST_CASE("bare scalars have a canonical machine form") {
    Scalar s = Scalar::constant(Rational(-1, 2), 4) + Scalar::monomial(Rational(3), 2, 4);
    std::string text = scalar_to_json(s);
    CHECK(text == R"([{"exp":0,"coeff":"-1/2"},{"exp":2,"coeff":"3"}])");
    CHECK(scalar_from_json(text, 4) == s);
    CHECK_THROWS_AS(scalar_from_json("{", 4), DescriptionError);
    CHECK_THROWS_AS(scalar_from_json(R"([{"exp":0,"coeff":"1/0"}])", 4), std::exception);
}

TEST_CASE("suite selection and reports") {
    Session session = load_description(fixture("abelian.json"));
    SuiteConfig config;
    config.suites = {"combinatorics", "theorem"};
    config.max_arity = 3;
    RunResult result = run_suites(session, config);
    REQUIRE(result.suites.size() == 2);
    CHECK(result.exit_code() == 0);
    CHECK(result.text_report().find("summary:") != std::string::npos);

    SuiteConfig bad;
    bad.suites = {"nope"};
    CHECK_THROWS_AS(run_suites(session, bad), std::invalid_argument);

    // identical runs produce byte-identical reports
    RunResult again = run_suites(session, config);
    CHECK(result.json_report(config, "abelian.json") == again.json_report(config, "abelian.json"));
    CHECK(result.text_report() == again.text_report());
}

TEST_CASE("fixture files regenerate byte-identically") {
    REQUIRE(run_cli("gen-fixtures --out /tmp/leibcheck_fixtures --truncation 4 >/dev/null") == 0);
    for (const std::string name :
         {"g4_identity.json", "g4_strict.json", "g4_solver.json", "g4_twisted.json",
          "nilpotent3.json", "leibniz3.json", "abelian.json", "broken_leibniz.json"}) {
        CHECK(read_file("/tmp/leibcheck_fixtures/" + name) == read_file(fixture(name)));
    }
}

TEST_CASE("command line contract") {
    CHECK(run_cli("--input " + fixture("abelian.json") + " --suite combinatorics") == 0);
    CHECK(run_cli("--input " + fixture("broken_leibniz.json") + " >/dev/null 2>&1") == 1);
    CHECK(run_cli("--no-such-flag >/dev/null 2>&1") == 2);
    CHECK(run_cli(">/dev/null 2>&1") == 2); // --input is required
    CHECK(run_cli("--input " + fixture("abelian.json") + " --suite wat >/dev/null 2>&1") == 2);

    // emitted reports are byte-identical across runs
    std::string base = "--input " + fixture("abelian.json") + " --seed 11 --max-arity 3";
    CHECK(run_cli(base + " --report /tmp/leibcheck_r1.json >/dev/null") == 0);
    CHECK(run_cli(base + " --report /tmp/leibcheck_r2.json >/dev/null") == 0);
    CHECK(read_file("/tmp/leibcheck_r1.json") == read_file("/tmp/leibcheck_r2.json"));

    // --emit-b round-trips through the loader
    CHECK(run_cli("--input " + fixture("abelian.json") +
                  " --suite theorem --max-arity 3 --emit-b /tmp/leibcheck_b.json >/dev/null") ==
          0);
    BTables tables = load_b_tables("/tmp/leibcheck_b.json");
    CHECK(tables.taylor.size() == 3);
}
