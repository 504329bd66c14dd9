#pragma once

// Normalized Fourier analysis on Z_N, Bohr sets, the f = f1 + f2 split and
// 3-AP counts, assembled into the transference experiment.

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "envsieve/numbers.hpp"

namespace envsieve::transfer {

class CyclicFunction {
public:
    /// Throws ContractError on non-finite values.
    explicit CyclicFunction(std::vector<double> values);

    std::uint64_t N() const { return values_.size(); }
    std::span<const double> values() const { return values_; }
    double operator[](std::uint64_t n) const { return values_[n % values_.size()]; }
    bool nonnegative() const { return nonnegative_; }
    double mean() const;

private:
    std::vector<double> values_;
    bool nonnegative_;
};

/// fhat(a) = E_{n in Z_N} f(n) e_N(an).
std::vector<cplx> dft(const CyclicFunction& f);
std::vector<cplx> dft(std::span<const double> f);
/// f(n) = sum_a fhat(a) e_N(-an).
std::vector<cplx> inverse_dft(std::span<const cplx> fhat);

/// E_{n,d} f(n) g(n+d) k(n+2d) = sum_c fhat(c) ghat(-2c) khat(c), from transforms. N odd.
double trilinear_fourier(std::span<const cplx> fhat, std::span<const cplx> ghat, std::span<const cplx> khat);
/// E_{n,d} f(n) f(n+d) f(n+2d) via the Fourier identity. Throws HypothesisError for even N.
double three_ap_count(const CyclicFunction& f);
/// The same average by the O(N^2) double loop.
double three_ap_brute(const CyclicFunction& f);

/// {a : |fhat(a)| >= eps}
std::vector<std::uint64_t> large_spectrum(std::span<const cplx> fhat, double eps);

struct BohrSet {
    std::uint64_t N = 0;
    std::vector<std::uint64_t> freqs;
    double eps = 0;
    std::vector<std::uint64_t> members;
};

/// B(Omega, eps) = {m : |1 - e_N(am)| <= eps for all a in Omega}; eps in (0, 2).
BohrSet bohr_set(std::span<const std::uint64_t> freqs, double eps, std::uint64_t N);

/// |E_{m in B} e_N(-am)|^2 for every a.
std::vector<double> bohr_multiplier(const BohrSet& B);

/// f1(n) = E_{m1, m2 in B} f(n + m1 - m2), f2 = f - f1.
std::pair<CyclicFunction, CyclicFunction> decompose(const CyclicFunction& f, const BohrSet& B);

/// three_ap_count for 0 <= f <= 1 with E f >= delta; HypothesisError otherwise.
double varnavides_count(const CyclicFunction& f, double delta);

struct TransferenceOptions {
    double eps = 0;  // <= 0 selects eps automatically
    double q = 2.5;
    int max_halvings = 40;
};

struct TransferenceReport {
    std::uint64_t N = 0;
    double delta = 0;  // E f
    double eta = 0;    // max_a |nuhat(a) - [a = 0]|
    double M = 0;      // ||fhat||_q
    double q_exponent = 0;
    double eps = 0;
    int eps_halvings = 0;
    std::size_t omega_size = 0;
    std::size_t bohr_size = 0;
    double bohr_lower_bound = 0;  // (eps/(2 pi))^{|Omega|} N / 2
    double ap_count_f = 0;
    double ap_count_f1 = 0;
    double residual_terms = 0;    // the seven components other than (1,1,1)
    std::array<double, 8> components{};  // index 4(i-1) + 2(j-1) + (k-1)
    double residual_bound = 0;    // ||f2hat||_q^q ||f2hat||_inf^{3-q}
    double f2_linf = 0;
    double f2_linf_prediction = 0;  // max(eps, 3 eps (1 + eta))
    double f1_max = 0;
    double f1_min = 0;
    double f1_dominance_bound = 0;  // 1 + eta N / |B|
    bool f2_dominated = false;      // |f2hat(a)| <= |fhat(a)| for all a
};

/// Requires N prime, 0 <= f <= nu pointwise (ContractError otherwise) and 2 < q < 3.
TransferenceReport transference_run(const CyclicFunction& f, const CyclicFunction& nu,
                                    const TransferenceOptions& opts = {});

}  // namespace envsieve::transfer
