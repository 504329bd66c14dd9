#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "envsieve/numbers.hpp"

namespace envsieve::forms {

struct LinearForm {
    std::int64_t a;
    std::int64_t b;
    bool operator==(const LinearForm&) const = default;
};

/// Delta = prod_{i<j} (a_i b_j - a_j b_i); throws DegenerateFormError on zero.
Integer discriminant(std::span<const LinearForm> forms);

/// F(n) = prod_j (a_j n + b_j) with all a_j != 0 and nonzero discriminant.
class LinearSystem {
public:
    explicit LinearSystem(std::vector<LinearForm> forms);

    static LinearSystem primes() { return LinearSystem({{1, 0}}); }
    static LinearSystem twins() { return LinearSystem({{1, 0}, {1, 2}}); }

    std::span<const LinearForm> forms() const { return forms_; }
    std::size_t k() const { return forms_.size(); }
    const Integer& discriminant() const { return discriminant_; }

    /// F(n) mod q, for q >= 1.
    std::uint64_t value_mod(std::int64_t n, std::uint64_t q) const;
    bool divides_value(std::uint64_t d, std::int64_t n) const { return value_mod(n, d) == 0; }
    /// gcd(q, F(n)) == 1.
    bool coprime(std::uint64_t q, std::int64_t n) const;
    bool value_is_zero(std::int64_t n) const;
    Integer value(std::int64_t n) const;

    /// Residues r mod p with p | F(r); every residue if some form vanishes identically mod p.
    std::vector<std::uint64_t> roots_mod_prime(std::uint64_t p) const;

    std::string to_string() const;
    bool operator==(const LinearSystem& o) const { return forms_ == o.forms_; }

private:
    std::vector<LinearForm> forms_;
    Integer discriminant_;
};

struct LocalData {
    std::uint64_t q = 1;
    std::vector<std::uint64_t> residues;
    Rational gamma;
};

inline constexpr std::uint64_t kLocalDataLimit = 1000000;

/// Direct enumeration of X_q; q <= 10^6.
LocalData local_data(const LinearSystem& F, std::uint64_t q);

/// gamma(p) from the root count; 1 - k/p when p does not divide Delta * prod a_j.
Rational gamma_prime(const LinearSystem& F, std::uint64_t p);
/// gamma(q) = prod_{p | q} gamma(p).
Rational gamma_of(const LinearSystem& F, std::uint64_t q);

/// True iff gamma(p) > 0 for every prime p. Only primes <= k and primes
/// dividing some gcd(a_j, b_j) can have gamma(p) = 0, so only those are checked.
bool nondegenerate(const LinearSystem& F);

/// The bound rule: check primes <= max(k, largest prime factor of Delta).
bool nondegenerate_by_discriminant(const LinearSystem& F);

struct SingularSeries {
    double value = 0;
    std::uint64_t truncation_prime = 0;
    /// Bound on |log(S / S_P)| from the omitted primes.
    double log_tail_bound = 0;
    /// Bound on |S - S_P|, i.e. value * (exp(log_tail_bound) - 1).
    double tail_bound = 0;
};

/// prod_{p <= P} gamma(p) / (1 - 1/p)^k. For p > P with p > 2k and p not
/// dividing Delta * prod a_j, |log factor| <= k^2/p^2 * 1/(1 - k/p); summing
/// over n > P gives the tail bound k^2 / (P (1 - k/P)). P is raised to 2k when
/// smaller.
SingularSeries singular_series(const LinearSystem& F, std::uint64_t truncation_prime);

/// Accepts products of "a*n+b" terms in parentheses ("(2n+1)(n-3)",
/// "(2*n+1)*(n+5)") and the shorthand "n(n+2)(n+6)".
LinearSystem parse_form(std::string_view text);

}  // namespace envsieve::forms
