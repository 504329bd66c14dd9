#include <doctest.h>

#include <cmath>
#include <numbers>

#include "envsieve/errors.hpp"
#include "envsieve/spectra.hpp"
#include "support/oracles.hpp"

using namespace envsieve;
using namespace envsieve::spectra;
using forms::LinearSystem;

namespace {

cplx direct_h(const std::vector<std::uint64_t>& X, double theta) {
    cplx s(0, 0);
    for (auto n : X) s += std::polar(1.0, 2 * std::numbers::pi * theta * double(n));
    return s;
}

TupleSet singleton(std::uint64_t N) { return TupleSet{LinearSystem::primes(), N, {1}}; }

}  // namespace

TEST_CASE("enumerate_tuples examples") {
    CHECK(enumerate_tuples(LinearSystem::primes(), 10).members == std::vector<std::uint64_t>{2, 3, 5, 7});
    CHECK(enumerate_tuples(LinearSystem::twins(), 10).members == std::vector<std::uint64_t>{3, 5});
    CHECK(enumerate_tuples(LinearSystem::primes(), 1000000).members.size() == 78498);
    CHECK_THROWS_AS(enumerate_tuples(LinearSystem({{1, 0}, {1, 1}}), 100), DegenerateFormError);
    CHECK_THROWS_AS(enumerate_tuples(LinearSystem({{1, 20}}), 10), HypothesisError);
}

TEST_CASE("enumerate_tuples agrees with trial division") {
    LinearSystem F({{1, 0}, {1, 2}, {1, 6}});
    auto X = enumerate_tuples(F, 5000);
    std::vector<std::uint64_t> expect;
    for (std::uint64_t n = 1; n <= 5000; ++n)
        if (oracle::trial_prime(n) && oracle::trial_prime(n + 2) && oracle::trial_prime(n + 6)) expect.push_back(n);
    CHECK(X.members == expect);
}

TEST_CASE("exp_sum_grid values") {
    auto X = enumerate_tuples(LinearSystem::primes(), 100);
    auto S = exp_sum_grid(X, 8);
    CHECK(S.M() == 8 * 128);
    CHECK(S.value(0).real() == doctest::Approx(25.0));
    CHECK(S.value(S.M() / 2).real() == doctest::Approx(-23.0));
    auto rng = oracle::rng(3);
    for (int i = 0; i < 50; ++i) {
        std::uint64_t j = rng() % S.M();
        cplx d = direct_h(X.members, double(j) / double(S.M()));
        CHECK(std::abs(S.value(j) - d) < 1e-9);
    }
    auto one = exp_sum_grid(singleton(50), 4);
    for (std::uint64_t j = 0; j < one.M(); ++j) CHECK(std::abs(one.value(j)) == doctest::Approx(1.0));
    CHECK_THROWS_AS(exp_sum_grid(X, 2), DomainError);
    CHECK_THROWS_AS(exp_sum_grid(X, 8, false, 1024), BudgetError);
}

TEST_CASE("Parseval on the grid") {
    for (auto F : {LinearSystem::primes(), LinearSystem::twins()}) {
        auto X = enumerate_tuples(F, 20000);
        auto S = exp_sum_grid(X);
        CHECK(grid_power_mean(S, 2.0) == doctest::Approx(double(X.members.size())).epsilon(1e-6));
    }
}

TEST_CASE("L^4 norm equals the additive quadruple count") {
    for (auto F : {LinearSystem::primes(), LinearSystem::twins()}) {
        auto X = enumerate_tuples(F, 2000);
        auto S = exp_sum_grid(X);
        double count = double(oracle::additive_quadruples(X.members));
        CHECK(std::pow(lp_norm(S, 4.0), 4) == doctest::Approx(count).epsilon(1e-3));
        auto rep = lp_norm_report(X, 4.0);
        CHECK(rep.exact);
        CHECK(rep.quadrature_error == 0.0);
        CHECK(rep.norm == doctest::Approx(rep.norm_fine).epsilon(1e-9));
    }
}

TEST_CASE("lp_norm of a single exponential is 1") {
    auto S = exp_sum_grid(singleton(64));
    for (double p : {2.5, 3.0, 7.25}) CHECK(lp_norm(S, p) == doctest::Approx(1.0));
    CHECK_THROWS_AS(lp_norm(S, 2.0), DomainError);
}

TEST_CASE("non-even exponents report a quadrature estimate") {
    auto X = enumerate_tuples(LinearSystem::primes(), 10000);
    auto rep = lp_norm_report(X, 3.0);
    CHECK_FALSE(rep.exact);
    CHECK(rep.quadrature_error < 1e-3 * rep.norm);
}

TEST_CASE("von Mangoldt weights") {
    auto X = enumerate_tuples(LinearSystem::primes(), 1000);
    auto S = exp_sum_grid(X, 8, true);
    double theta = 0;
    for (auto p : X.members) theta += std::log(double(p));
    CHECK(S.value(0).real() == doctest::Approx(theta));
}

TEST_CASE("mainthm_ratio respects the major-arc lower bound") {
    for (auto F : {LinearSystem::primes(), LinearSystem::twins()}) {
        auto r = mainthm_ratio(F, 10000, 3.0);
        CHECK(r.norm >= r.lower_bound);
        CHECK(r.ratio > 0);
        CHECK(std::isfinite(r.ratio));
    }
    CHECK(mainthm_ratio(LinearSystem::primes(), 10000, 3.0).singular_series == 1.0);
    CHECK(mainthm_ratio(LinearSystem::twins(), 10000, 3.0).singular_series == doctest::Approx(1.3203236).epsilon(1e-5));
}

TEST_CASE("restriction harness") {
    selberg::SieveKit kit(LinearSystem::primes(), 5);
    const std::uint64_t N = 2000;
    CHECK_THROWS_AS(restriction_check(kit, 1249, 4), HypothesisError);
    CHECK_THROWS_AS(restriction_check(kit, N, 4, 2.0), DomainError);
    auto beta = cyclic_beta(kit, N);
    double mean = 0;
    for (double b : beta) mean += b;
    mean /= double(N);

    // f supported on {0}: ratio is the mean of beta.
    std::vector<cplx> f(N, cplx(0, 0));
    f[0] = cplx(0.0, -3.0);
    auto r0 = restriction_ratio(beta, f, 5.0 / 3.0);
    CHECK(r0.ratio == doctest::Approx(mean));
    CHECK(r0.rhs == doctest::Approx(9.0));

    // Brute-force left side for a random f.
    auto rng = oracle::rng(5);
    std::vector<cplx> g(N, cplx(0, 0));
    for (int i = 0; i < 20; ++i) g[rng() % N] = std::polar(1.0, double(rng() % 1000) / 100.0);
    double lhs = 0;
    for (std::uint64_t n = 1; n <= N; ++n) {
        cplx s(0, 0);
        for (std::uint64_t b = 0; b < N; ++b)
            if (g[b] != cplx(0, 0)) s += g[b] * std::polar(1.0, 2 * std::numbers::pi * double(b * n % N) / double(N));
        lhs += std::norm(s) * selberg::beta(kit, std::int64_t(n)).get_d();
    }
    CHECK(restriction_ratio(beta, g, 5.0 / 3.0).lhs == doctest::Approx(lhs / double(N)).epsilon(1e-9));

    // Global phase and translation of the support leave the ratio unchanged.
    double base = restriction_ratio(beta, g, 1.5).ratio;
    for (int t = 0; t < 10; ++t) {
        cplx rot = std::polar(1.0, double(rng() % 628) / 100.0);
        std::uint64_t shift = rng() % N;
        std::vector<cplx> h(N, cplx(0, 0));
        for (std::uint64_t b = 0; b < N; ++b) h[(b + shift) % N] = rot * g[b];
        CHECK(restriction_ratio(beta, h, 1.5).ratio == doctest::Approx(base).epsilon(1e-10));
    }

    auto rep = restriction_check(kit, N, 30, 5.0 / 3.0, 7);
    CHECK(rep.trials.size() == 30);
    CHECK(rep.trials[0].kind == "delta");
    CHECK(rep.trials[0].ratio == doctest::Approx(mean));
    CHECK(rep.max_ratio >= rep.trials[0].ratio);
    auto again = restriction_check(kit, N, 30, 5.0 / 3.0, 7);
    CHECK(again.max_ratio == rep.max_ratio);
}

TEST_CASE("extension harness") {
    selberg::SieveKit kit(LinearSystem::primes(), 5);
    const std::uint64_t N = 4096;
    std::vector<double> zero(N, 0.0);
    auto z = extension_check(kit, zero);
    CHECK(z.lhs_fixed == 0.0);
    CHECK(z.lhs_variable == 0.0);
    CHECK(z.rhs == 0.0);
    CHECK_THROWS_AS(extension_check(kit, std::vector<double>(1000, 1.0)), HypothesisError);

    // The proof sequence turns the variable-rotation side into ||h||_p / N over X and X_{R!}.
    auto X = enumerate_tuples(LinearSystem::primes(), N);
    auto a = proof_sequence(kit, X);
    auto r = extension_check(kit, a, 3.0);
    TupleSet Y{X.F, N, {}};
    for (auto n : X.members)
        if (kit.sieved(std::int64_t(n))) Y.members.push_back(n);
    double norm = lp_norm(exp_sum_grid(Y), 3.0);
    CHECK(r.lhs_variable * double(N) == doctest::Approx(norm).epsilon(1e-9));
    CHECK(r.rhs == doctest::Approx(std::sqrt(double(Y.members.size()) / kit.G_double() / double(N))).epsilon(1e-9));

    auto rng = oracle::rng(9);
    std::vector<double> pm(N);
    for (auto& x : pm) x = (rng() & 1) ? 1.0 : -1.0;
    auto s = extension_check(kit, pm);
    CHECK(s.ratio_fixed > 0);
    CHECK(std::isfinite(s.ratio_variable));
}

TEST_CASE("beta_mean") {
    selberg::SieveKit k2(LinearSystem::primes(), 2);
    CHECK(beta_mean(k2, 1000) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(beta_mean(k2, 3), HypothesisError);
    for (auto F : {LinearSystem::primes(), LinearSystem::twins()}) {
        selberg::SieveKit kit(F, 10);
        double m = beta_mean(kit, 100000);
        CHECK(m >= 0.5);
        CHECK(m <= 3.0);
        auto table = selberg::FourierTable::build(kit);
        double fourier = beta_mean_fourier(table, 100000);
        CHECK(std::fabs(m - fourier) <= 10.0 * 1e4 / 1e5);
        CHECK(m == doctest::Approx(fourier).epsilon(1e-8));
    }
}

TEST_CASE("divisor_moment") {
    CHECK(divisor_moment(1, 1000, 3) == 1.0);
    CHECK(divisor_moment(2, 1000000, 1) == doctest::Approx(1.5));
    CHECK_THROWS_AS(divisor_moment(11, 10, 1), HypothesisError);
    const std::uint64_t B = 12, N = 3000;
    double s = 0;
    for (std::uint64_t n = 1; n <= N / 2; ++n) {
        double c = 0;
        for (std::uint64_t q = 1; q <= B; ++q) c += (n % q == 0);
        s += c * c * c;
    }
    CHECK(divisor_moment(B, N, 3) == doctest::Approx(s / double(N / 2)));
}
