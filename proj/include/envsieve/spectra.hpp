#pragma once

// Exponential sums over prime k-tuples, L^p norms on the circle, and the
// restriction/extension harnesses for beta_R.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "envsieve/forms.hpp"
#include "envsieve/numbers.hpp"
#include "envsieve/selberg.hpp"

namespace envsieve::spectra {

/// n <= N with every a_j n + b_j a (positive) prime.
struct TupleSet {
    forms::LinearSystem F;
    std::uint64_t N = 0;
    std::vector<std::uint64_t> members;
};

/// Throws DegenerateFormError when F is not nondegenerate and HypothesisError
/// when some |a_j| or |b_j| exceeds N.
TupleSet enumerate_tuples(const forms::LinearSystem& F, std::uint64_t N);

inline constexpr std::size_t kDefaultGridBudget = std::size_t{2} << 30;

/// h(j/M) on the grid j = 0..M-1. Only j <= M/2 is stored; the rest follow
/// from h(-theta) = conj(h(theta)) for real weights.
class Spectrum {
public:
    Spectrum(std::uint64_t N, std::uint64_t M, std::vector<cplx> half);

    std::uint64_t N() const { return N_; }
    std::uint64_t M() const { return M_; }
    std::span<const cplx> half() const { return half_; }
    cplx value(std::uint64_t j) const;

private:
    std::uint64_t N_;
    std::uint64_t M_;
    std::vector<cplx> half_;
};

/// M = oversample * (least power of two >= N). With von_mangoldt set, n carries
/// weight prod_j log(a_j n + b_j). Throws BudgetError when the transform would
/// exceed grid_budget bytes.
Spectrum exp_sum_grid(const TupleSet& X, unsigned oversample = 8, bool von_mangoldt = false,
                      std::size_t grid_budget = kDefaultGridBudget);
/// Weighted form: h(theta) = sum_{n <= N} weights[n] e(n theta), weights indexed from 0.
Spectrum exp_sum_grid(std::span<const double> weights, std::uint64_t N, unsigned oversample = 8,
                      std::size_t grid_budget = kDefaultGridBudget);

/// (1/M) sum_j |h(j/M)|^p, for any p > 0.
double grid_power_mean(const Spectrum& S, double p);
/// ||h||_p from the grid Riemann sum; p > 2.
double lp_norm(const Spectrum& S, double p);

struct LpNormReport {
    double norm = 0;
    double norm_fine = 0;          // at twice the oversampling
    double quadrature_error = 0;   // |norm - norm_fine|; 0 when the grid is exact
    bool exact = false;            // even integer p with M > (p/2) N
    unsigned oversample = 0;
    std::size_t members = 0;
};
LpNormReport lp_norm_report(const TupleSet& X, double p, unsigned oversample = 8, bool von_mangoldt = false);

struct MainThmReport {
    std::uint64_t N = 0;
    double p = 0;
    std::size_t members = 0;
    double norm = 0;
    double quadrature_error = 0;
    double singular_series = 0;
    double ratio = 0;        // norm / (S_F N^{1-1/p} (log N)^{-k})
    double lower_bound = 0;  // ((c_k/N) (|X|/2)^p)^{1/p}, c_k = 1/(8k)
};
MainThmReport mainthm_ratio(const forms::LinearSystem& F, std::uint64_t N, double p, unsigned oversample = 8,
                            bool von_mangoldt = false);

/// beta_R(n) for n = 1..N stored at index n mod N, the layout used by both harnesses.
std::vector<double> cyclic_beta(const selberg::SieveKit& kit, std::uint64_t N);

/// E_{1<=n<=N} |sum_b f(b) e_N(bn)|^2 beta(n) against (sum_b |f(b)|^q)^{2/q}.
struct RestrictionRatio {
    double lhs = 0;
    double rhs = 0;
    double ratio = 0;
};
RestrictionRatio restriction_ratio(std::span<const double> cyclic_beta, std::span<const cplx> f, double q);

struct RestrictionTrial {
    std::string kind;  // "delta", "random", "progression"
    std::size_t support = 0;
    double lhs = 0;
    double rhs = 0;
    double ratio = 0;
};

struct RestrictionReport {
    std::uint64_t R = 0;
    std::uint64_t N = 0;
    double q = 0;
    std::uint64_t seed = 0;
    double max_ratio = 0;
    std::vector<RestrictionTrial> trials;
};

/// Requires N >= 2 R^4 and 1 < q < 2.
RestrictionReport restriction_check(const selberg::SieveKit& kit, std::uint64_t N, std::size_t trials, double q = 5.0 / 3.0,
                                    std::uint64_t seed = 7);

struct ExtensionReport {
    double p = 0;
    double lhs_fixed = 0;     // (sum_b |E_n a_n beta(n) e_N(-bn)|^p)^{1/p}
    double lhs_variable = 0;  // (int_0^1 |E_n a_n beta(n) e(-n theta)|^p d theta)^{1/p}
    double rhs = 0;           // (E_n |a_n|^2 beta(n))^{1/2}
    double ratio_fixed = 0;
    double ratio_variable = 0;  // lhs_variable / (N^{-1/p} rhs)
};

/// a[i] is a_{i+1}, length N. Requires N >= 2 R^4 and p > 2.
ExtensionReport extension_check(const selberg::SieveKit& kit, std::span<const double> a, double p = 2.5,
                                unsigned oversample = 8);
/// a_n = 1_{X and X_{R!}}(n) / beta_R(n), the sequence from the proof of the L^p bound.
std::vector<double> proof_sequence(const selberg::SieveKit& kit, const TupleSet& X);

/// E_{1<=n<=N} beta_R(n). Requires R^2 <= N.
double beta_mean(const selberg::SieveKit& kit, std::uint64_t N);
/// The same mean from the Fourier side: sum_{a/q} w(a/q) E_n e_q(-an).
double beta_mean_fourier(const selberg::FourierTable& table, std::uint64_t N);

/// E_{0<n<=N/2} (#{q <= B : q | n})^m. Requires 1 <= B <= N.
double divisor_moment(std::uint64_t B, std::uint64_t N, int m);

}  // namespace envsieve::spectra
