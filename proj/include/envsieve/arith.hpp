#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace envsieve::arith {

struct PrimePower {
    std::uint64_t prime;
    std::uint32_t exponent;
    bool operator==(const PrimePower&) const = default;
};

struct Factorization {
    std::uint64_t n = 1;
    std::vector<PrimePower> factors;  // sorted by prime

    std::uint64_t value() const;
    bool squarefree() const;
    unsigned omega() const { return static_cast<unsigned>(factors.size()); }  // distinct primes
    unsigned big_omega() const;                                               // with multiplicity
};

/// Sorted primes up to a limit. Immutable after construction.
class PrimeTable {
public:
    PrimeTable() = default;
    PrimeTable(std::uint64_t limit, std::vector<std::uint64_t> primes);

    std::uint64_t limit() const { return limit_; }
    std::span<const std::uint64_t> primes() const { return primes_; }
    std::size_t size() const { return primes_.size(); }
    std::uint64_t operator[](std::size_t i) const { return primes_[i]; }

    /// n must not exceed limit().
    bool contains(std::uint64_t n) const;
    /// Number of primes <= x, for x <= limit().
    std::size_t count_upto(std::uint64_t x) const;

private:
    std::uint64_t limit_ = 0;
    std::vector<std::uint64_t> primes_;
};

inline constexpr std::size_t kDefaultSieveBudget = std::size_t{2} << 30;

/// Segmented sieve of Eratosthenes. Throws BudgetError when the output table
/// would exceed memory_budget bytes.
PrimeTable sieve_primes(std::uint64_t limit, std::size_t memory_budget = kDefaultSieveBudget);

/// As sieve_primes, reading from and populating the on-disk cache in
/// cache_directory().
PrimeTable cached_sieve_primes(std::uint64_t limit);
std::filesystem::path cache_directory();

void write_prime_cache(const std::filesystem::path& path, std::span<const std::uint64_t> primes);
std::vector<std::uint64_t> read_prime_cache(const std::filesystem::path& path);

/// Primes below 10^5, shared by trial division and small-prime loops.
const PrimeTable& small_primes();

/// Deterministic Miller-Rabin, exact for all 64-bit n.
bool is_prime(std::uint64_t n);

/// Trial division by primes <= 10^5, then Pollard-Brent with a fixed seed
/// sequence. Output is deterministic; n = 1 gives an empty list.
Factorization factor(std::uint64_t n);

struct ArithValues {
    int mu;
    std::uint64_t phi;
    unsigned omega;
    bool operator==(const ArithValues&) const = default;
};

ArithValues arith_functions(std::uint64_t n);
ArithValues arith_functions(const Factorization& f);
int mobius(std::uint64_t n);
std::uint64_t euler_phi(std::uint64_t n);

std::vector<std::uint64_t> divisors(const Factorization& f);  // sorted

/// Smallest-prime-factor table for 0..limit (entries 0 and 1 are 0).
class SmallestFactorTable {
public:
    explicit SmallestFactorTable(std::uint64_t limit);
    std::uint64_t limit() const { return spf_.size() - 1; }
    std::uint32_t spf(std::uint64_t n) const { return spf_[n]; }
    bool is_prime(std::uint64_t n) const { return n >= 2 && spf_[n] == n; }
    Factorization factor(std::uint64_t n) const;

private:
    std::vector<std::uint32_t> spf_;
};

/// mu(n) for 0 <= n <= limit (mu(0) reported as 0).
std::vector<std::int8_t> mobius_table(std::uint64_t limit);

std::uint64_t gcd(std::uint64_t a, std::uint64_t b);
std::uint64_t lcm(std::uint64_t a, std::uint64_t b);
std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m);
/// Inverse of a modulo m; requires gcd(a, m) = 1.
std::uint64_t invmod(std::uint64_t a, std::uint64_t m);
/// Reduces an arbitrary signed value into [0, m).
std::uint64_t mod(std::int64_t a, std::uint64_t m);

}  // namespace envsieve::arith
