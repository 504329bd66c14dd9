#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

#include "envsieve/forms.hpp"
#include "envsieve/numbers.hpp"

namespace envsieve::selberg {

/// a/q with 0 <= a < q and gcd(a, q) = 1; 0/1 is the only fraction with a = 0.
struct ReducedFraction {
    std::uint64_t a = 0;
    std::uint64_t q = 1;

    static ReducedFraction make(std::int64_t a, std::uint64_t q);
    auto operator<=>(const ReducedFraction&) const = default;
};

/// Exact Selberg data for F at level R:
///   h(q)      = mu^2(q) prod_{p|q} (1 - gamma(p)) / gamma(p)
///   G(R)      = sum_{q <= R} h(q)
///   G_d(x)    = sum_{q <= x, (q,d) = 1} h(q)
///   lambda_d  = mu(d) G_d(R/d) / (gamma(d) G(R))   for squarefree d <= R
class SieveKit {
public:
    SieveKit(forms::LinearSystem F, std::uint64_t R);

    const forms::LinearSystem& form() const { return F_; }
    std::uint64_t level() const { return R_; }

    const Rational& gamma(std::uint64_t d) const;  // d <= R
    const Rational& h(std::uint64_t d) const;      // d <= R
    const Rational& G() const { return G_; }
    double G_double() const { return G_d_; }
    Rational G_coprime(std::uint64_t x, std::uint64_t d) const;  // x <= R
    /// lambda_d, or 0 when d > R or d is not squarefree.
    Rational lambda(std::uint64_t d) const;

    /// Squarefree d <= R in increasing order, with matching lambda values.
    std::span<const std::uint64_t> support() const { return support_; }
    std::span<const Rational> support_lambda() const { return lambda_; }
    std::span<const double> support_lambda_double() const { return lambda_d_; }

    /// n lies in X_{R!}: no prime p <= R divides F(n).
    bool sieved(std::int64_t n) const;

private:
    forms::LinearSystem F_;
    std::uint64_t R_;
    std::vector<Rational> gamma_;  // index d
    std::vector<Rational> h_;      // index d
    Rational G_;
    double G_d_;
    std::vector<std::uint64_t> support_;
    std::vector<Rational> lambda_;
    std::vector<double> lambda_d_;
    std::vector<std::uint64_t> small_primes_;  // primes <= R
};

/// alpha_R(n) = G(R) sum_{d <= R, d | F(n)} lambda_d. Throws DomainError when F(n) = 0.
Rational alpha_div(const SieveKit& kit, std::int64_t n);
/// beta_R(n) = alpha_R(n)^2 / G(R).
Rational beta(const SieveKit& kit, std::int64_t n);
/// The same sums without the F(n) != 0 check; they read F(n) only modulo d.
Rational alpha_div_periodic(const SieveKit& kit, std::int64_t n);
Rational beta_periodic(const SieveKit& kit, std::int64_t n);

/// s(a/q) = (1/|X_q|) sum_{n in X_q} e_q(an) by direct enumeration, q <= 10^6.
cplx s_coeff_direct(const forms::LinearSystem& F, ReducedFraction frac);
/// s(a/q) prime by prime: zero for non-squarefree q, otherwise
/// prod_p s(a_p/p) with s(b/p) = -sum_{roots r} e_p(br) / (p - #roots).
cplx s_coeff(const forms::LinearSystem& F, ReducedFraction frac);

/// Real factor w(a/q)/s(a/q) = (1/G) sum_{t <= R} h(t) S(q/(q,t), R/t) for
/// squarefree q, where S(m, L) = sum mu(l1 l2 / m) over l1, l2 | m, l1, l2 <= L,
/// m | l1 l2. Zero for non-squarefree q.
Rational w_factor(const SieveKit& kit, std::uint64_t q);
/// w(a/q) = s(a/q) w_factor(q); q <= R^2.
cplx w_coeff(const SieveKit& kit, ReducedFraction frac);

/// Brute-force w(a/q) from the quadruple sum over d1 r1, d2 r2 <= R,
/// averaging 1_{([r1,r2], F(n)) = 1} e_q(an) over n mod lcm([r1,r2], q). R <= 12.
cplx w_oracle(const SieveKit& kit, ReducedFraction frac);
/// w_oracle for every a in [0, q) at once (entries with gcd(a, q) > 1 included).
std::vector<cplx> w_oracle_row(const SieveKit& kit, std::uint64_t q);

/// sum_{q <= R} sum_{a in Z_q^*} s(a/q) e_q(-an), with the s values cached.
class AlphaFourier {
public:
    explicit AlphaFourier(const SieveKit& kit);
    cplx operator()(std::int64_t n) const;

private:
    struct Term {
        std::uint64_t a, q;
        cplx s;
    };
    std::vector<Term> terms_;
};

cplx alpha_fourier(const SieveKit& kit, std::int64_t n);

struct FourierEntry {
    ReducedFraction frac;
    cplx s;
    cplx w;
};

/// s and w for every reduced fraction with q <= R^2, ordered by (q, a).
class FourierTable {
public:
    static FourierTable build(const SieveKit& kit);

    std::uint64_t level() const { return R_; }
    std::span<const FourierEntry> entries() const { return entries_; }
    const FourierEntry* find(ReducedFraction frac) const;
    /// sum over entries of w(a/q) e_q(-an)
    cplx evaluate(std::int64_t n) const;
    std::size_t nonzero_terms() const { return nonzero_.size(); }

private:
    std::uint64_t R_ = 0;
    std::vector<FourierEntry> entries_;
    std::vector<std::size_t> nonzero_;
};

/// max over n in [lo, hi] of |beta(n) - table.evaluate(n)|.
double verify_expansion(const SieveKit& kit, const FourierTable& table, std::int64_t lo, std::int64_t hi);

/// max over n in Z_M of |1_{X_M}(n) - gamma(M) sum_{q|M} sum_a s(a/q) e_q(-an)|; M <= 10^4.
double indicator_expansion_check(const forms::LinearSystem& F, std::uint64_t M);

/// sum_{dr = q} mu(d)/gamma(r) 1_{(r, F(n)) = 1}, exact.
Rational divisor_split_sum(const forms::LinearSystem& F, std::uint64_t q, std::int64_t n);

/// Sums of per-modulus weights over the squarefree moduli d dividing F(n),
/// for n in consecutive blocks. Moduli dividing 30030 are folded into one
/// periodic pattern; the rest are added along their residue classes.
class DivisorSieve {
public:
    DivisorSieve(const forms::LinearSystem& F, std::vector<std::uint64_t> moduli,
                 std::vector<std::vector<double>> weights);

    std::size_t channels() const { return weights_.size(); }
    /// out[c][i] = sum over moduli d | F(lo + i) of weights[c][d index], i < len.
    void accumulate(std::int64_t lo, std::size_t len, std::vector<std::vector<double>>& out) const;

private:
    static constexpr std::uint64_t kPeriod = 30030;
    std::vector<std::uint64_t> moduli_;
    std::vector<std::vector<double>> weights_;
    std::vector<std::vector<std::uint64_t>> residues_;  // per modulus
    std::vector<std::size_t> strided_;                  // moduli not dividing kPeriod
    std::vector<std::vector<double>> pattern_;          // per channel, length kPeriod
};

/// beta_R(n) in double precision for n = lo .. lo + len - 1.
std::vector<double> beta_values(const SieveKit& kit, std::int64_t lo, std::size_t len);

}  // namespace envsieve::selberg
