#pragma once

// The comparison sieve lambda^GY_d = mu(d) log(R/d) / log R for F(n) = n,
// and diagnostics relating it to the Selberg weights.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "envsieve/numbers.hpp"

namespace envsieve::gy {

inline constexpr double kEulerGamma = 0.57721566490153286061;

class GyKit {
public:
    explicit GyKit(std::uint64_t R);

    std::uint64_t level() const { return R_; }
    std::span<const std::uint64_t> support() const { return support_; }  // squarefree d <= R
    std::span<const double> weights() const { return lambda_; }
    double lambda(std::uint64_t d) const;  // 0 off the support

private:
    std::uint64_t R_;
    std::vector<std::uint64_t> support_;
    std::vector<double> lambda_;
};

/// G(R) (sum_{d | n, d <= R} lambda^GY_d)^2. Throws DomainError for n = 0.
double beta_prime(const GyKit& kit, std::uint64_t n, double G);
double beta_prime(const GyKit& kit, std::uint64_t n, const Rational& G);

/// G(R) = sum_{q <= R} mu^2(q) / phi(q), the Selberg normalizer for F(n) = n.
double selberg_G(std::uint64_t R);
/// G_d(x) = sum_{q <= x, (q, d) = 1} mu^2(q) / phi(q).
double selberg_G_coprime(std::uint64_t x, std::uint64_t d);
/// Selberg weights for F(n) = n in double precision, on the GyKit support.
std::vector<double> selberg_lambda(std::uint64_t R);

struct MertensConstant {
    double value;          // sum_{p <= P} log p / (p(p-1)) + 1/P
    double uncertainty;    // |true - value| <= 1.04 / P
    std::uint64_t truncation;
};

/// C_M = sum_p log p / (p(p-1)). The omitted tail lies in [0, 2.04/P] by
/// theta(x) < 1.01624 x; value adds the asymptotic tail 1/P.
MertensConstant mertens_constant(std::uint64_t truncation = 10000000);

/// G(R) - (log R + Euler gamma + C_M).
double g_asymptotic_gap(std::uint64_t R);
/// G_d(R/d) - (phi(d)/d) (log(R/d) + Euler gamma + C_M + sum_{p | d} log p / p).
double gd_asymptotic_gap(std::uint64_t R, std::uint64_t d);

/// E_{1 <= n <= N} |beta'_R(n) - beta_R(n)|. Requires R^2 <= N.
double l1_distance(std::uint64_t R, std::uint64_t N);

/// E_{n <= N} |H_R(n)|^{2m} with H_R(n) = sum_{d | n, d <= R} mu(d). Requires N >= R.
double h_r_moments(std::uint64_t R, std::uint64_t N, int m);

/// max over squarefree d <= sqrt(R) of |lambda^GY_d - lambda^SEL_d|, with the maximizing d.
std::pair<double, std::uint64_t> lambda_gap(std::uint64_t R);

/// Q(lambda) = sum_{d1, d2} lambda_d1 lambda_d2 / [d1, d2].
Rational quadratic_form(std::span<const std::uint64_t> d, std::span<const Rational> lambda);
/// The same value as sum_delta phi(delta) u_delta^2 with u_delta = sum_{delta | d} lambda_d / d.
Rational quadratic_form_diagonal(std::span<const std::uint64_t> d, std::span<const Rational> lambda);
double quadratic_form(std::span<const std::uint64_t> d, std::span<const double> lambda);

}  // namespace envsieve::gy
