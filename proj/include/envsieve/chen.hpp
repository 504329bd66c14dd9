#pragma once

// Chen primes, the W-trick and the search for 3-term progressions of Chen primes.

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "envsieve/arith.hpp"
#include "envsieve/numbers.hpp"
#include "envsieve/transfer.hpp"

namespace envsieve::chen {

enum class PartnerKind { prime, semiprime };
std::string_view kind_name(PartnerKind k);

/// p + 2 is prime, or a product p1 p2 (multiplicity counted) with p1, p2 > p^exponent.
struct ChenRecord {
    std::uint64_t p = 0;
    PartnerKind kind = PartnerKind::prime;
    std::vector<std::uint64_t> factors_of_p_plus_2;  // with multiplicity, increasing
    Rational exponent;
};

Rational default_exponent();  // 3/11

/// Largest value whose p + 2 may be factored by table lookup: SELBERG_BUDGET or 10^7.
std::uint64_t factoring_budget();

/// Throws HypothesisError when p is not prime.
std::optional<ChenRecord> is_chen(std::uint64_t p, const Rational& exponent = default_exponent());

/// Classifies primes up to a limit from one smallest-factor table covering limit + 2.
class ChenSieve {
public:
    /// Throws BudgetError when limit exceeds factoring_budget().
    explicit ChenSieve(std::uint64_t limit, Rational exponent = default_exponent());

    std::uint64_t limit() const { return limit_; }
    const Rational& exponent() const { return exponent_; }
    bool is_prime(std::uint64_t n) const { return table_.is_prime(n); }
    std::optional<ChenRecord> classify(std::uint64_t p) const;  // p <= limit
    bool is_chen(std::uint64_t p) const;
    /// Chen primes in [lo, hi], increasing.
    std::vector<std::uint64_t> chen_primes(std::uint64_t lo, std::uint64_t hi) const;

private:
    std::uint64_t limit_;
    Rational exponent_;
    arith::SmallestFactorTable table_;
};

struct DensityInterval {
    std::uint64_t lo = 0;  // exclusive
    std::uint64_t hi = 0;  // inclusive
    std::uint64_t count = 0;
    double normalized = 0;  // count log^2(hi) / hi
};

struct DensityScan {
    std::uint64_t N = 0;
    std::vector<DensityInterval> intervals;  // (N/2^{j+1}, N/2^j], j = 0, 1, ...
};

DensityScan chen_density_scan(std::uint64_t N, const Rational& exponent = default_exponent());
std::vector<ChenRecord> chen_records(std::uint64_t N, const Rational& exponent = default_exponent());

struct WTrick {
    double t = 0;
    std::uint64_t W = 0;
    std::vector<std::uint64_t> residues;  // X_W, increasing
    std::uint64_t chosen_b = 0;
    std::uint64_t formula_corrected = 0;  // W (1/2) prod_{3<=p<=t} (1 - 2/p)
    std::uint64_t formula_printed = 0;    // W prod_{3<=p<=t} (1 - 2/p)
};

/// X_W = {b mod W : (b, W) = (b + 2, W) = 1}. Requires 3 <= t <= 31; throws
/// BudgetError when |X_W| would exceed factoring_budget().
WTrick w_trick(double t);

struct ResidueSelection {
    std::uint64_t b = 0;
    std::vector<std::uint64_t> X;  // N/4 <= n <= N/2 with Wn + b a Chen prime
    std::vector<std::uint64_t> counts;  // |X_b| per residue, aligned with wt.residues
};

/// The b in X_W maximizing |X_b| (smallest b on ties); sets wt.chosen_b.
ResidueSelection select_residue(std::uint64_t N, WTrick& wt, const Rational& exponent = default_exponent());

struct ApTriple {
    std::uint64_t p1, p2, p3;
};

struct DirectAp3 {
    std::uint64_t N = 0;
    std::uint64_t chen_count = 0;
    std::uint64_t triples = 0;
    double normalized = 0;  // triples log^6 N / N^2
    std::vector<ApTriple> witnesses;  // smallest middle terms first
};

DirectAp3 chen_ap3_direct(std::uint64_t N, std::size_t max_witnesses = 20, const Rational& exponent = default_exponent());

struct TransferenceAp3 {
    std::uint64_t N = 0;
    double t = 0;
    std::uint64_t W = 0;
    std::uint64_t b = 0;
    std::uint64_t modulus = 0;  // least prime >= N
    std::uint64_t R = 0;
    std::size_t X_size = 0;
    double c = 0;                // f = c 1_X, c = min of nu on X
    double paper_scale = 0;      // log^2 N / log^2 t
    double transference_count = 0;  // (ap_count_f modulus^2 / c^3 - |X|) / 2
    std::uint64_t direct_count = 0; // genuine progressions inside X
    transfer::TransferenceReport report;
};

TransferenceAp3 chen_ap3_transference(std::uint64_t N, double t, const transfer::TransferenceOptions& opts = {},
                                      const Rational& exponent = default_exponent());

struct FlatnessReport {
    std::uint64_t W = 0;
    std::uint64_t b = 0;
    std::uint64_t R = 0;
    std::uint64_t N = 0;
    double max_deviation = 0;  // max_a |nuhat(a) - [a = 0]|
    std::uint64_t argmax = 0;
    double zero_deviation = 0;  // |nuhat(0) - 1|
    std::size_t small_q_checked = 0;  // table fractions with 1 < q <= t
    bool small_q_vanish = false;      // w(a/q) = 0 on all of them
};

/// nu = beta_R for F(n) = (Wn + b)(Wn + b + 2), b = wt.chosen_b, on Z_N. Requires R^2 <= N.
FlatnessReport nu_fourier_flatness(const WTrick& wt, std::uint64_t R, std::uint64_t N);

}  // namespace envsieve::chen
