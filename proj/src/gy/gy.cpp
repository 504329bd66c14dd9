#include "envsieve/gy.hpp"

#include <algorithm>
#include <cmath>

#include "envsieve/errors.hpp"
#include "envsieve/forms.hpp"
#include "envsieve/kernels.hpp"
#include "envsieve/parallel.hpp"
#include "envsieve/selberg.hpp"

namespace envsieve::gy {

namespace {

std::vector<double> inverse_phi_squarefree(std::uint64_t R) {
    auto mu = arith::mobius_table(R);
    std::vector<std::uint64_t> phi(R + 1);
    for (std::uint64_t i = 0; i <= R; ++i) phi[i] = i;
    for (std::uint64_t p = 2; p <= R; ++p)
        if (phi[p] == p)
            for (std::uint64_t j = p; j <= R; j += p) phi[j] -= phi[j] / p;
    std::vector<double> out(R + 1, 0.0);
    for (std::uint64_t q = 1; q <= R; ++q)
        if (mu[q] != 0) out[q] = 1.0 / static_cast<double>(phi[q]);
    return out;
}

}  // namespace

GyKit::GyKit(std::uint64_t R) : R_(R) {
    if (R == 0) throw DomainError("sieve level must be at least 1");
    auto mu = arith::mobius_table(R);
    double logR = std::log(static_cast<double>(R));
    for (std::uint64_t d = 1; d <= R; ++d) {
        if (mu[d] == 0) continue;
        support_.push_back(d);
        if (R == 1) {
            lambda_.push_back(1.0);
            continue;
        }
        double v = std::log(static_cast<double>(R) / static_cast<double>(d)) / logR;
        lambda_.push_back(mu[d] * v);
    }
}

double GyKit::lambda(std::uint64_t d) const {
    auto it = std::lower_bound(support_.begin(), support_.end(), d);
    if (it == support_.end() || *it != d) return 0.0;
    return lambda_[static_cast<std::size_t>(it - support_.begin())];
}

double beta_prime(const GyKit& kit, std::uint64_t n, double G) {
    if (n == 0) throw DomainError("beta' is defined for n >= 1");
    double s = 0.0;
    auto d = kit.support();
    auto l = kit.weights();
    for (std::size_t i = 0; i < d.size(); ++i)
        if (n % d[i] == 0) s += l[i];
    return G * s * s;
}

double beta_prime(const GyKit& kit, std::uint64_t n, const Rational& G) { return beta_prime(kit, n, G.get_d()); }

double selberg_G(std::uint64_t R) {
    if (R == 0) throw DomainError("sieve level must be at least 1");
    auto h = inverse_phi_squarefree(R);
    long double s = 0.0L;
    for (std::uint64_t q = 1; q <= R; ++q) s += h[q];
    return static_cast<double>(s);
}

double selberg_G_coprime(std::uint64_t x, std::uint64_t d) {
    if (x == 0) return 0.0;
    auto h = inverse_phi_squarefree(x);
    long double s = 0.0L;
    for (std::uint64_t q = 1; q <= x; ++q)
        if (h[q] != 0.0 && arith::gcd(q, d) == 1) s += h[q];
    return static_cast<double>(s);
}

std::vector<double> selberg_lambda(std::uint64_t R) {
    auto h = inverse_phi_squarefree(R);
    long double G = 0.0L;
    for (std::uint64_t q = 1; q <= R; ++q) G += h[q];
    auto mu = arith::mobius_table(R);
    std::vector<double> out;
    for (std::uint64_t d = 1; d <= R; ++d) {
        if (mu[d] == 0) continue;
        long double Gd = 0.0L;
        for (std::uint64_t q = 1; q <= R / d; ++q)
            if (h[q] != 0.0 && arith::gcd(q, d) == 1) Gd += h[q];
        // gamma(d) = phi(d)/d, and 1/phi(d) = h(d) for squarefree d.
        long double v = Gd * static_cast<long double>(d) * h[d] / G;
        out.push_back(static_cast<double>(mu[d] * v));
    }
    return out;
}

MertensConstant mertens_constant(std::uint64_t truncation) {
    auto primes = arith::sieve_primes(truncation);
    long double s = 0.0L;
    for (std::uint64_t p : primes.primes()) {
        long double lp = static_cast<long double>(p);
        s += std::log(lp) / (lp * (lp - 1.0L));
    }
    double P = static_cast<double>(truncation);
    return {static_cast<double>(s) + 1.0 / P, 1.04 / P, truncation};
}

namespace {
double cached_mertens() {
    static const double value = mertens_constant().value;
    return value;
}
}  // namespace

double g_asymptotic_gap(std::uint64_t R) {
    if (R < 10) throw DomainError("the G(R) asymptotic is evaluated for R >= 10");
    return selberg_G(R) - (std::log(static_cast<double>(R)) + kEulerGamma + cached_mertens());
}

double gd_asymptotic_gap(std::uint64_t R, std::uint64_t d) {
    if (d == 0 || d > R) throw DomainError("need 1 <= d <= R");
    auto f = arith::factor(d);
    double ratio = 1.0, plog = 0.0;
    for (auto [p, e] : f.factors) {
        double lp = static_cast<double>(p);
        ratio *= 1.0 - 1.0 / lp;
        plog += std::log(lp) / lp;
    }
    double x = static_cast<double>(R) / static_cast<double>(d);
    double main = ratio * (std::log(x) + kEulerGamma + cached_mertens() + plog);
    return selberg_G_coprime(R / d, d) - main;
}

namespace {

constexpr std::size_t kBlock = 4 * 30030;

// Sums fn(block values) over n = 1..N in fixed blocks, merged in block order.
template <class Fn>
double block_scan(const selberg::DivisorSieve& sieve, std::uint64_t N, Fn fn) {
    std::size_t blocks = static_cast<std::size_t>((N + kBlock - 1) / kBlock);
    std::vector<double> partial(blocks, 0.0);
    parallel_for(blocks, [&](std::size_t b) {
        std::uint64_t lo = 1 + static_cast<std::uint64_t>(b) * kBlock;
        std::size_t len = static_cast<std::size_t>(std::min<std::uint64_t>(kBlock, N - lo + 1));
        std::vector<std::vector<double>> acc;
        sieve.accumulate(static_cast<std::int64_t>(lo), len, acc);
        partial[b] = fn(acc);
    });
    return pairwise_sum(partial.data(), partial.size());
}

}  // namespace

double l1_distance(std::uint64_t R, std::uint64_t N) {
    if (R == 0 || N == 0) throw DomainError("R and N must be positive");
    if (R > 1 && R * R > N) throw HypothesisError("l1_distance needs R^2 <= N");
    if (R == 1) return 0.0;
    GyKit gk(R);
    std::vector<double> sel = selberg_lambda(R);
    std::vector<double> gyw(gk.weights().begin(), gk.weights().end());
    std::vector<std::uint64_t> moduli(gk.support().begin(), gk.support().end());
    selberg::DivisorSieve sieve(forms::LinearSystem::primes(), moduli, {sel, gyw});
    double G = selberg_G(R);
    double total = block_scan(sieve, N, [](const std::vector<std::vector<double>>& acc) {
        return kernels::sum_abs_diff_squares(acc[1], acc[0]);
    });
    return G * total / static_cast<double>(N);
}

double h_r_moments(std::uint64_t R, std::uint64_t N, int m) {
    if (R == 0 || N < R) throw HypothesisError("h_r_moment needs 1 <= R <= N");
    if (m < 1) throw DomainError("moment order must be positive");
    auto mu = arith::mobius_table(R);
    std::vector<std::uint64_t> moduli;
    std::vector<double> w;
    for (std::uint64_t d = 1; d <= R; ++d)
        if (mu[d] != 0) {
            moduli.push_back(d);
            w.push_back(mu[d]);
        }
    selberg::DivisorSieve sieve(forms::LinearSystem::primes(), moduli, {w});
    double total = block_scan(sieve, N, [m](const std::vector<std::vector<double>>& acc) {
        double s = 0.0;
        for (double h : acc[0]) s += std::pow(h * h, m);
        return s;
    });
    return total / static_cast<double>(N);
}

std::pair<double, std::uint64_t> lambda_gap(std::uint64_t R) {
    GyKit gk(R);
    auto sel = selberg_lambda(R);
    double worst = -1.0;
    std::uint64_t arg = 1;
    auto d = gk.support();
    for (std::size_t i = 0; i < d.size() && d[i] * d[i] <= R; ++i) {
        double g = std::fabs(gk.weights()[i] - sel[i]);
        if (g > worst) {
            worst = g;
            arg = d[i];
        }
    }
    return {worst, arg};
}

Rational quadratic_form(std::span<const std::uint64_t> d, std::span<const Rational> lambda) {
    if (d.size() != lambda.size()) throw ContractError("one weight per modulus is required");
    Rational s = 0;
    for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t j = 0; j < d.size(); ++j)
            s += lambda[i] * lambda[j] / to_integer(arith::lcm(d[i], d[j]));
    return s;
}

Rational quadratic_form_diagonal(std::span<const std::uint64_t> d, std::span<const Rational> lambda) {
    if (d.size() != lambda.size()) throw ContractError("one weight per modulus is required");
    std::uint64_t top = d.empty() ? 0 : *std::max_element(d.begin(), d.end());
    Rational s = 0;
    for (std::uint64_t delta = 1; delta <= top; ++delta) {
        Rational u = 0;
        for (std::size_t i = 0; i < d.size(); ++i)
            if (d[i] % delta == 0) u += lambda[i] / to_integer(d[i]);
        if (u != 0) s += to_integer(arith::euler_phi(delta)) * u * u;
    }
    return s;
}

double quadratic_form(std::span<const std::uint64_t> d, std::span<const double> lambda) {
    long double s = 0.0L;
    for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t j = 0; j < d.size(); ++j)
            s += static_cast<long double>(lambda[i]) * lambda[j] / static_cast<long double>(arith::lcm(d[i], d[j]));
    return static_cast<double>(s);
}

}  // namespace envsieve::gy
