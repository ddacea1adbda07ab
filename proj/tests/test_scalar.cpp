#include "doctest.h"

#include "leibcheck/linear_system.hpp"
#include "leibcheck/scalar.hpp"

#include <random>

using namespace leibcheck;

namespace {

Scalar random_scalar(std::mt19937_64& rng, int truncation) {
    Scalar s(truncation);
    for (int e = 0; e < truncation; ++e) {
        long num = static_cast<long>(rng() % 11) - 5;
        long den = 1 + static_cast<long>(rng() % 4);
        if (num != 0) s += Scalar::monomial(Rational(num, den), e, truncation);
    }
    return s;
}

} // namespace

TEST_CASE("rational parsing") {
    CHECK(parse_rational("3/4") == Rational(3, 4));
    CHECK(parse_rational("-6/8") == Rational(-3, 4));
    CHECK(parse_rational("5") == Rational(5));
    CHECK(rational_str(Rational(-3, 4)) == "-3/4");
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("x"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("1.5"), std::invalid_argument);
}

TEST_CASE("scalar ring basics") {
    // (1 + t)(1 - t) at K = 2: the t^2 term truncates away.
    Scalar one_plus = Scalar::one(2) + Scalar::monomial(Rational(1), 1, 2);
    Scalar one_minus = Scalar::one(2) - Scalar::monomial(Rational(1), 1, 2);
    CHECK(one_plus * one_minus == Scalar::one(2));

    std::mt19937_64 rng(7);
    Scalar a = random_scalar(rng, 4);
    CHECK(a + Scalar(4) == a);

    Scalar half_t = Scalar::monomial(Rational(1, 2), 1, 3);
    Scalar third_t = Scalar::monomial(Rational(1, 3), 1, 3);
    CHECK(half_t * third_t == Scalar::monomial(Rational(1, 6), 2, 3));
}

TEST_CASE("scalar valuation") {
    CHECK(!Scalar(3).valuation().has_value());
    Scalar s = Scalar::monomial(Rational(1), 1, 3) + Scalar::monomial(Rational(1), 2, 3);
    CHECK(s.valuation() == 1);
    CHECK(Scalar::constant(Rational(3, 4), 3).valuation() == 0);
}

TEST_CASE("scalar ring axioms hold exactly") {
    std::mt19937_64 rng(20240811);
    for (int trial = 0; trial < 200; ++trial) {
        int K = 1 + static_cast<int>(rng() % 5);
        Scalar a = random_scalar(rng, K);
        Scalar b = random_scalar(rng, K);
        Scalar c = random_scalar(rng, K);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + b == b + a);
        CHECK(a - a == Scalar(K));

        auto va = a.valuation(), vb = b.valuation(), vab = (a * b).valuation();
        if (va && vb) {
            if (vab) CHECK(*vab >= *va + *vb);
            if (*va + *vb < K) CHECK(*vab == *va + *vb); // leading coefficients cannot cancel over Q
        } else {
            CHECK(!vab.has_value());
        }
    }
}

TEST_CASE("scalar division") {
    Scalar s = Scalar::constant(Rational(1), 3) + Scalar::monomial(Rational(3), 2, 3);
    CHECK(s.div_int(3) * Scalar::constant(Rational(3), 3) == s);
    CHECK_THROWS_AS(s.div_int(0), std::invalid_argument);
}

TEST_CASE("mixed truncation orders are rejected") {
    CHECK_THROWS_AS(Scalar::one(2) + Scalar::one(3), std::invalid_argument);
}

TEST_CASE("scalar printing") {
    Scalar s = Scalar::constant(Rational(-1, 2), 4) + Scalar::monomial(Rational(1), 1, 4) +
               Scalar::monomial(Rational(-2, 3), 3, 4);
    CHECK(s.str() == "-1/2 + t - 2/3 t^3");
    CHECK(Scalar(2).str() == "0");
}

TEST_CASE("linear solver basics") {
    CHECK(solve_linear_system({}).ok());

    // x + y = 1, x - y = 1  ->  x = 1, y = 0
    std::vector<LinearEquation> eqs(2);
    eqs[0].coeffs = {{0, Rational(1)}, {1, Rational(1)}};
    eqs[0].rhs = Rational(1);
    eqs[1].coeffs = {{0, Rational(1)}, {1, Rational(-1)}};
    eqs[1].rhs = Rational(1);
    auto r = solve_linear_system(eqs);
    REQUIRE(r.ok());
    CHECK(r.solution->value(0) == Rational(1));
    CHECK(r.solution->value(1) == Rational(0));

    // x = 1, x = 2 -> certified obstruction
    std::vector<LinearEquation> bad(2);
    bad[0].coeffs = {{0, Rational(1)}};
    bad[0].rhs = Rational(1);
    bad[1].coeffs = {{0, Rational(1)}};
    bad[1].rhs = Rational(2);
    auto obs = solve_linear_system(bad);
    REQUIRE(!obs.ok());
    REQUIRE(obs.obstruction.has_value());
    // The certificate combination must cancel all coefficients and leave a
    // nonzero right-hand side.
    std::map<int, Rational> combined;
    Rational rhs(0);
    for (const auto& [e, m] : obs.obstruction->multipliers) {
        for (const auto& [var, c] : bad[e].coeffs) combined[var] += c * m;
        rhs += bad[e].rhs * m;
    }
    for (const auto& [var, c] : combined) CHECK(c.is_zero());
    CHECK(rhs == obs.obstruction->combined_rhs);
    CHECK(!rhs.is_zero());
}

TEST_CASE("linear solver satisfies random systems exactly") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        int vars = 1 + static_cast<int>(rng() % 5);
        int rows = 1 + static_cast<int>(rng() % 6);
        std::vector<LinearEquation> eqs(rows);
        for (auto& eq : eqs) {
            for (int v = 0; v < vars; ++v) {
                long c = static_cast<long>(rng() % 7) - 3;
                if (c != 0) eq.coeffs[v] = Rational(c);
            }
            eq.rhs = Rational(static_cast<long>(rng() % 9) - 4);
        }
        auto result = solve_linear_system(eqs);
        if (!result.ok()) {
            // verify the certificate
            std::map<int, Rational> combined;
            Rational rhs(0);
            for (const auto& [e, m] : result.obstruction->multipliers) {
                for (const auto& [var, c] : eqs[e].coeffs) combined[var] += c * m;
                rhs += eqs[e].rhs * m;
            }
            bool all_zero = true;
            for (const auto& [var, c] : combined) all_zero = all_zero && c.is_zero();
            CHECK(all_zero);
            CHECK(!rhs.is_zero());
            continue;
        }
        for (const auto& eq : eqs) {
            Rational total(0);
            for (const auto& [var, c] : eq.coeffs) total += c * result.solution->value(var);
            CHECK(total == eq.rhs);
        }
    }
}

TEST_CASE("scalar-coefficient solver flattens exponents") {
    const int K = 3;
    // (1 + t) x = 1 + 2t + t^2  ->  x = 1 + t
    std::vector<ScalarEquation> eqs;
    ScalarEquation eq(K);
    eq.coeffs.emplace(0, Scalar::one(K) + Scalar::monomial(Rational(1), 1, K));
    eq.rhs = Scalar::one(K) + Scalar::monomial(Rational(2), 1, K) +
             Scalar::monomial(Rational(1), 2, K);
    eqs.push_back(eq);
    auto r = solve_scalar_linear_system(eqs, K);
    REQUIRE(r.ok());
    CHECK(r.solution->at(0) == Scalar::one(K) + Scalar::monomial(Rational(1), 1, K));

    // t x = 1 has no solution in Q[t]/(t^K)
    std::vector<ScalarEquation> bad;
    ScalarEquation b(K);
    b.coeffs.emplace(0, Scalar::monomial(Rational(1), 1, K));
    b.rhs = Scalar::one(K);
    bad.push_back(b);
    CHECK(!solve_scalar_linear_system(bad, K).ok());
}
