#include <doctest.h>

#include "envsieve/errors.hpp"
#include "envsieve/forms.hpp"
#include "support/oracles.hpp"

using namespace envsieve;
using namespace envsieve::forms;

namespace {
LinearSystem F_n() { return LinearSystem::primes(); }
LinearSystem F_twin() { return LinearSystem::twins(); }
LinearSystem F_mixed() { return LinearSystem({{3, 1}, {1, 5}}); }
Rational frac(long a, long b) {
    Rational r(a, b);
    r.canonicalize();
    return r;
}
}  // namespace

TEST_CASE("discriminant") {
    CHECK(F_n().discriminant() == 1);
    CHECK(F_twin().discriminant() == 2);
    CHECK(LinearSystem({{1, 0}, {1, 1}, {1, 2}}).discriminant() == 2);
    CHECK(F_mixed().discriminant() == 14);
    CHECK_THROWS_AS(LinearSystem({{1, 1}, {2, 2}}), DegenerateFormError);
    CHECK_THROWS_AS(LinearSystem({{0, 1}}), DegenerateFormError);
}

TEST_CASE("local_data examples") {
    auto l3 = local_data(F_twin(), 3);
    CHECK(l3.residues == std::vector<std::uint64_t>{2});
    CHECK(l3.gamma == Rational(1, 3));
    auto l2 = local_data(F_twin(), 2);
    CHECK(l2.residues == std::vector<std::uint64_t>{1});
    CHECK(l2.gamma == Rational(1, 2));
    auto l1 = local_data(F_n(), 1);
    CHECK(l1.residues == std::vector<std::uint64_t>{0});
    CHECK(l1.gamma == 1);
    CHECK_THROWS_AS(local_data(F_n(), 1000001), RangeError);
}

TEST_CASE("gamma_of examples") {
    CHECK(gamma_of(F_twin(), 5) == Rational(3, 5));
    CHECK(gamma_of(F_twin(), 15) == Rational(1, 5));
    CHECK(gamma_of(F_mixed(), 1) == 1);
    // Multiplicative path beyond direct enumeration.
    CHECK(gamma_of(F_twin(), 1000003ull * 3) == Rational(1000001, 1000003) * Rational(1, 3));
}

TEST_CASE("gamma_of equals direct enumeration for q <= 200") {
    for (const auto& F : {F_n(), F_twin(), F_mixed()})
        for (std::uint64_t q = 1; q <= 200; ++q) REQUIRE(gamma_of(F, q) == local_data(F, q).gamma);
}

TEST_CASE("gamma(p) = 1 - k/p for k < p <= 100 away from Delta and the leading coefficients") {
    std::vector<LinearSystem> systems{F_n(), F_twin(), F_mixed(), LinearSystem({{1, 0}, {1, 2}, {1, 6}}),
                                      LinearSystem({{2, 1}, {6, 5}, {1, 9}})};
    for (const auto& F : systems) {
        for (std::uint64_t p = 2; p <= 100; ++p) {
            if (!oracle::trial_prime(p) || p <= F.k()) continue;
            if (mpz_divisible_ui_p(F.discriminant().get_mpz_t(), p)) continue;
            bool leading = false;
            for (auto f : F.forms()) leading |= f.a % static_cast<std::int64_t>(p) == 0;
            if (leading) continue;
            REQUIRE(local_data(F, p).gamma == frac(static_cast<long>(p - F.k()), static_cast<long>(p)));
        }
    }
    // p = 3 divides the leading coefficient of 3n+1 but not Delta = 14: one root only.
    CHECK(local_data(F_mixed(), 3).gamma == Rational(2, 3));
    CHECK(gamma_prime(F_mixed(), 3) == Rational(2, 3));
}

TEST_CASE("uniform fibres of X_M over X_q") {
    for (const auto& F : {F_n(), F_twin()}) {
        for (std::uint64_t M = 1; M <= 360; ++M) {
            auto XM = local_data(F, M);
            std::vector<char> inM(M, 0);
            for (auto r : XM.residues) inM[r] = 1;
            for (std::uint64_t q = 1; q <= M; ++q) {
                if (M % q) continue;
                auto Xq = local_data(F, q);
                std::vector<char> inq(q, 0);
                for (auto r : Xq.residues) inq[r] = 1;
                for (std::uint64_t m = 0; m < q; ++m) {
                    long count = 0;
                    for (std::uint64_t n = m; n < M; n += q) count += inM[n];
                    Rational lhs = frac(count, static_cast<long>(M / q));
                    Rational rhs = inq[m] ? Rational(XM.gamma / Xq.gamma) : Rational(0);
                    REQUIRE(lhs == rhs);
                }
            }
        }
    }
}

TEST_CASE("nondegenerate") {
    CHECK(nondegenerate(F_twin()));
    CHECK_FALSE(nondegenerate(LinearSystem({{1, 0}, {1, 1}})));
    CHECK_FALSE(nondegenerate(LinearSystem({{1, 0}, {1, 2}, {1, 4}})));
    CHECK(nondegenerate(LinearSystem({{1, 0}, {1, 2}, {1, 6}})));
    // k = 1 with a common factor: gamma(2) = 0 although Delta = 1.
    CHECK_FALSE(nondegenerate(LinearSystem({{2, 2}})));
    CHECK(nondegenerate_by_discriminant(LinearSystem({{2, 2}})));
    // For k >= 2 both certificates agree.
    auto g = oracle::rng(11);
    std::uniform_int_distribution<int> coef(-12, 12);
    int compared = 0;
    while (compared < 400) {
        std::vector<LinearForm> fs;
        int k = 2 + compared % 3;
        for (int j = 0; j < k; ++j) {
            int a = coef(g);
            fs.push_back({a == 0 ? 1 : a, coef(g)});
        }
        try {
            LinearSystem F(fs);
            bool expect = true;
            for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull})
                if (local_data(F, p).gamma == 0) expect = false;
            REQUIRE(nondegenerate(F) == expect);
            REQUIRE(nondegenerate_by_discriminant(F) == expect);
            ++compared;
        } catch (const DegenerateFormError&) {
        }
    }
}

TEST_CASE("singular series") {
    auto s1 = singular_series(F_n(), 1000);
    CHECK(s1.value == 1.0);
    CHECK(s1.tail_bound == 0.0);

    double twin = oracle::twin_constant(10000000);
    auto s = singular_series(F_twin(), 100000);
    CHECK(s.value == doctest::Approx(1.320324).epsilon(1e-6));
    CHECK(std::fabs(s.value - twin) <= s.tail_bound);
    CHECK(std::fabs(s.value - twin) <= 1e-5);
    auto s10 = singular_series(F_twin(), 10);
    CHECK(s10.tail_bound > 0);
    CHECK(std::fabs(s10.value - s.value) <= s10.tail_bound);

    CHECK_THROWS_AS(singular_series(LinearSystem({{1, 0}, {1, 1}}), 100), DegenerateFormError);
    // 13 divides Delta = 26, so the product must reach it.
    CHECK_THROWS_AS(singular_series(LinearSystem({{1, 0}, {1, 26}}), 5), HypothesisError);
    CHECK_NOTHROW(singular_series(LinearSystem({{1, 0}, {1, 26}}), 13));
}

TEST_CASE("form parser") {
    CHECK(parse_form("n(n+2)") == F_twin());
    CHECK(parse_form("n") == F_n());
    CHECK(parse_form("(3n+1)(n+5)") == F_mixed());
    CHECK(parse_form("(3*n+1)*(n+5)") == F_mixed());
    CHECK(parse_form(" ( 2n - 1 ) ( n + 6 ) ") == LinearSystem({{2, -1}, {1, 6}}));
    CHECK(parse_form("3n+1") == LinearSystem({{3, 1}}));
    CHECK(parse_form("(1+n)(n-1)").forms()[0] == LinearForm{1, 1});
    CHECK(parse_form("n(n+2)(n+6)").k() == 3);
    CHECK_THROWS_AS(parse_form(""), ParseError);
    CHECK_THROWS_AS(parse_form("n(n+2"), ParseError);
    CHECK_THROWS_AS(parse_form("x+1"), ParseError);
    CHECK_THROWS_AS(parse_form("(n+)"), ParseError);
    CHECK_THROWS_AS(parse_form("(n+99999999999999999999)"), ParseError);
    for (const auto& F : {F_n(), F_twin(), F_mixed(), LinearSystem({{-2, 7}, {5, -3}})})
        CHECK(parse_form(F.to_string()) == F);
}
