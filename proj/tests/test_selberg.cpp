#include <doctest.h>

#include <cmath>

#include "envsieve/errors.hpp"
#include "envsieve/selberg.hpp"
#include "support/oracles.hpp"

using namespace envsieve;
using namespace envsieve::selberg;
using forms::LinearSystem;

namespace {

Rational frac(long a, long b) {
    Rational r(a, b);
    r.canonicalize();
    return r;
}

LinearSystem F_n() { return LinearSystem::primes(); }
LinearSystem F_twin() { return LinearSystem::twins(); }
LinearSystem F_mixed() { return LinearSystem({{3, 1}, {1, 5}}); }

}  // namespace

TEST_CASE("ReducedFraction::make") {
    CHECK(ReducedFraction::make(4, 6) == ReducedFraction{2, 3});
    CHECK(ReducedFraction::make(-1, 4) == ReducedFraction{3, 4});
    CHECK(ReducedFraction::make(6, 6) == ReducedFraction{0, 1});
    CHECK_THROWS_AS(ReducedFraction::make(1, 0), DomainError);
}

TEST_CASE("sieve kit for F(n) = n at R = 3 and R = 1") {
    SieveKit kit(F_n(), 3);
    CHECK(kit.h(1) == 1);
    CHECK(kit.h(2) == 1);
    CHECK(kit.h(3) == frac(1, 2));
    CHECK(kit.G() == frac(5, 2));
    CHECK(kit.lambda(1) == 1);
    CHECK(kit.lambda(2) == frac(-4, 5));
    CHECK(kit.lambda(3) == frac(-3, 5));
    CHECK(kit.lambda(4) == 0);

    SieveKit one(F_n(), 1);
    CHECK(one.G() == 1);
    CHECK(one.lambda(1) == 1);
    CHECK_THROWS_AS(SieveKit(LinearSystem({{1, 0}, {1, 1}}), 5), DegenerateFormError);
}

TEST_CASE("h(m) = 1/phi(m) on squarefree m for F(n) = n") {
    SieveKit kit(F_n(), 60);
    for (std::uint64_t m = 1; m <= 60; ++m) {
        auto o = oracle::naive_mult(m);
        if (o.mu != 0) REQUIRE(kit.h(m) == frac(1, static_cast<long>(o.phi)));
        else REQUIRE(kit.h(m) == 0);
    }
}

TEST_CASE("alpha and beta examples") {
    SieveKit k3(F_n(), 3);
    CHECK(alpha_div(k3, 7) == frac(5, 2));
    CHECK(alpha_div(k3, 6) == -1);
    CHECK(beta(k3, 7) == frac(5, 2));
    CHECK(beta(k3, 6) == frac(2, 5));
    CHECK_THROWS_AS(alpha_div(k3, 0), DomainError);
    CHECK(alpha_div_periodic(k3, 0) == -1);

    SieveKit k2(F_n(), 2);
    for (std::int64_t n = 2; n <= 40; n += 2) {
        CHECK(alpha_div(k2, n) == 0);
        CHECK(beta(k2, n) == 0);
    }
    CHECK(std::abs(alpha_fourier(k2, 1) - cplx(2.0)) < 1e-12);
    CHECK(std::abs(alpha_fourier(SieveKit(F_twin(), 1), 17) - cplx(1.0)) < 1e-15);
    CHECK(std::abs(alpha_fourier(k3, 6) - cplx(-1.0)) < 1e-12);
}

TEST_CASE("dual-path alpha on small levels") {
    for (const auto& F : {F_n(), F_twin(), F_mixed()})
        for (std::uint64_t R : {2, 4, 7}) {
            SieveKit kit(F, R);
            AlphaFourier af(kit);
            for (std::int64_t n = -30; n <= 300; ++n) {
                if (F.value_is_zero(n)) continue;
                REQUIRE(std::abs(alpha_div(kit, n).get_d() - af(n)) < 1e-9);
            }
        }
}

TEST_CASE("lambda bounds and the sieved value of beta") {
    for (const auto& F : {F_n(), F_twin(), F_mixed()}) {
        SieveKit kit(F, 40);
        for (const auto& l : kit.support_lambda()) REQUIRE(abs(l) <= 1);
        for (std::int64_t n = 1; n <= 600; ++n)
            if (kit.sieved(n)) REQUIRE(beta(kit, n) == kit.G());
    }
}

TEST_CASE("s coefficients") {
    CHECK(s_coeff(F_n(), {0, 1}) == cplx(1.0));
    CHECK(std::abs(s_coeff(F_n(), {1, 2}) - cplx(-1.0)) < 1e-15);
    CHECK(std::abs(s_coeff(F_n(), {1, 3}) - cplx(-0.5)) < 1e-15);
    CHECK(std::abs(s_coeff(F_n(), {5, 6}) - cplx(0.5)) < 1e-15);
    CHECK(std::abs(s_coeff_direct(F_n(), {5, 6}) - cplx(0.5)) < 1e-15);
    CHECK(s_coeff(F_n(), {1, 4}) == cplx(0.0));
    CHECK(std::abs(s_coeff_direct(F_n(), {1, 4})) < 1e-15);
    CHECK_THROWS_AS(s_coeff_direct(F_n(), {2, 4}), DomainError);
    CHECK_THROWS_AS(s_coeff(LinearSystem({{2, 2}}), {1, 2}), DegenerateFormError);
}

TEST_CASE("direct and multiplicative s agree; vanishing and size bounds") {
    for (const auto& F : {F_n(), F_twin(), F_mixed()}) {
        for (std::uint64_t q = 1; q <= 300; ++q) {
            auto f = arith::factor(q);
            double bound = 1.0;
            bool gamma_one = q > 1;
            for (auto [p, e] : f.factors) {
                double g = forms::gamma_prime(F, p).get_d();
                bound *= (1 - g) / g;
                gamma_one = gamma_one && g == 1.0;
            }
            for (std::uint64_t a = 0; a < q; ++a) {
                if (arith::gcd(a, q) != 1 && q != 1) continue;
                cplx d = s_coeff_direct(F, {a, q});
                cplx m = s_coeff(F, {a, q});
                REQUIRE(std::abs(d - m) < 1e-10);
                if (!f.squarefree() || gamma_one) REQUIRE(m == cplx(0.0));
                if (f.squarefree() && q <= 100) REQUIRE(std::abs(m) <= bound + 1e-12);
            }
        }
    }
}

TEST_CASE("w coefficients: examples and range") {
    SieveKit k2(F_n(), 2);
    CHECK(w_coeff(k2, {0, 1}) == cplx(1.0));
    CHECK(std::abs(w_coeff(k2, {1, 2}) - cplx(-1.0)) < 1e-15);
    CHECK(w_coeff(SieveKit(F_n(), 3), {1, 4}) == cplx(0.0));
    CHECK_THROWS_AS(w_coeff(k2, {1, 5}), RangeError);
    CHECK(w_factor(SieveKit(F_twin(), 9), 1) == 1);
}

TEST_CASE("closed-form w matches the brute-force quadruple sum") {
    for (const auto& F : {F_n(), F_twin(), F_mixed()})
        for (std::uint64_t R : {2, 3, 4, 5, 6}) {
            SieveKit kit(F, R);
            for (std::uint64_t q = 1; q <= R * R; ++q) {
                auto row = w_oracle_row(kit, q);
                for (std::uint64_t a = 0; a < q; ++a) {
                    if (q > 1 && arith::gcd(a, q) != 1) continue;
                    if (q == 1 && a != 0) continue;
                    REQUIRE(std::abs(row[a] - w_coeff(kit, {a, q})) < 1e-9);
                }
            }
        }
    SieveKit k5(F_n(), 5);
    CHECK(std::abs(w_oracle(k5, {0, 1}) - cplx(1.0)) < 1e-12);
    CHECK(std::abs(w_oracle(k5, {1, 9})) < 1e-12);
    CHECK_THROWS_AS(w_oracle(SieveKit(F_n(), 13), {0, 1}), BudgetError);
}

TEST_CASE("Fourier table properties") {
    for (const auto& F : {F_n(), F_twin()}) {
        SieveKit kit(F, 8);
        auto table = FourierTable::build(kit);
        CHECK(table.find({0, 1})->w == cplx(1.0));
        std::size_t count = 0;
        for (const auto& e : table.entries()) {
            ++count;
            auto f = arith::factor(e.frac.q);
            REQUIRE(std::abs(e.w) <= std::pow(3.0, f.omega()) * std::abs(e.s) + 1e-12);
            if (!f.squarefree()) REQUIRE(e.w == cplx(0.0));
            if (e.frac.q > 1 && forms::gamma_of(F, e.frac.q) == 1) REQUIRE(e.w == cplx(0.0));
        }
        std::size_t phi_sum = 0;
        for (std::uint64_t q = 1; q <= 64; ++q) phi_sum += oracle::naive_mult(q).phi;
        CHECK(count == phi_sum);
        CHECK(table.find({2, 4}) == nullptr);
    }
}

TEST_CASE("Fourier expansion of beta") {
    SieveKit k2(F_n(), 2);
    CHECK(verify_expansion(k2, FourierTable::build(k2), 1, 100) <= 1e-9);
    SieveKit k6(F_n(), 6);
    CHECK(verify_expansion(k6, FourierTable::build(k6), 1, 1000) <= 1e-6);
    SieveKit t5(F_twin(), 5);
    CHECK(verify_expansion(t5, FourierTable::build(t5), 1, 1000) <= 1e-6);
}

TEST_CASE("indicator expansion") {
    CHECK(indicator_expansion_check(F_n(), 6) <= 1e-10);
    CHECK(indicator_expansion_check(F_twin(), 1) == 0.0);
    CHECK(indicator_expansion_check(F_mixed(), 1) == 0.0);
    CHECK(indicator_expansion_check(F_twin(), 30) <= 1e-10);
    CHECK(indicator_expansion_check(F_mixed(), 210) <= 1e-10);
    CHECK_THROWS_AS(indicator_expansion_check(F_n(), 10001), RangeError);
}

TEST_CASE("divisor split sum vanishes on non-squarefree q <= 500") {
    for (const auto& F : {F_n(), F_twin()})
        for (std::uint64_t q = 4; q <= 500; ++q) {
            if (arith::factor(q).squarefree()) continue;
            for (std::int64_t n = 0; n < static_cast<std::int64_t>(q); ++n) REQUIRE(divisor_split_sum(F, q, n) == 0);
        }
    // Squarefree q does not cancel in general.
    CHECK(divisor_split_sum(F_n(), 2, 1) != 0);
}

TEST_CASE("h(q) q^(3/4) stays bounded over squarefree q <= 10^4") {
    double worst = 0;
    for (std::uint64_t q = 1; q <= 10000; ++q) {
        auto f = arith::factor(q);
        if (!f.squarefree()) continue;
        double h = 1;
        for (auto [p, e] : f.factors) {
            double g = forms::gamma_prime(F_twin(), p).get_d();
            h *= (1 - g) / g;
        }
        worst = std::max(worst, h * std::pow(static_cast<double>(q), 0.75));
    }
    MESSAGE("max h(q) q^0.75 for n(n+2), q <= 10^4: " << worst);
    CHECK(std::isfinite(worst));
}

TEST_CASE("divisor sieve reproduces exact beta") {
    for (const auto& F : {F_n(), F_twin(), F_mixed()}) {
        SieveKit kit(F, 40);
        for (std::int64_t lo : {1ll, 29999ll, 1000000ll}) {
            auto vals = beta_values(kit, lo, 3000);
            for (std::size_t i = 0; i < vals.size(); ++i)
                REQUIRE(vals[i] == doctest::Approx(beta_periodic(kit, lo + static_cast<std::int64_t>(i)).get_d()).epsilon(1e-12));
        }
    }
}
