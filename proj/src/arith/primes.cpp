#include <algorithm>
#include <cmath>
#include <numeric>
#include <tuple>

#include "envsieve/arith.hpp"
#include "envsieve/errors.hpp"

namespace envsieve::arith {

PrimeTable::PrimeTable(std::uint64_t limit, std::vector<std::uint64_t> primes)
    : limit_(limit), primes_(std::move(primes)) {}

bool PrimeTable::contains(std::uint64_t n) const {
    if (n > limit_) throw RangeError("prime table queried beyond its limit");
    return std::binary_search(primes_.begin(), primes_.end(), n);
}

std::size_t PrimeTable::count_upto(std::uint64_t x) const {
    if (x > limit_) throw RangeError("prime table queried beyond its limit");
    return static_cast<std::size_t>(std::upper_bound(primes_.begin(), primes_.end(), x) - primes_.begin());
}

namespace {

std::vector<std::uint64_t> simple_sieve(std::uint64_t limit) {
    std::vector<char> composite(limit + 1, 0);
    std::vector<std::uint64_t> out;
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = 1;
    }
    return out;
}

std::uint64_t isqrt(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

}  // namespace

PrimeTable sieve_primes(std::uint64_t limit, std::size_t memory_budget) {
    if (limit < 2) throw DomainError("sieve_primes needs limit >= 2");
    double estimate = limit < 100 ? 25.0 : 1.26 * static_cast<double>(limit) / std::log(static_cast<double>(limit));
    if (estimate * sizeof(std::uint64_t) > static_cast<double>(memory_budget))
        throw BudgetError("prime table up to " + std::to_string(limit) + " exceeds the memory budget");

    std::uint64_t root = isqrt(limit);
    std::vector<std::uint64_t> base = simple_sieve(std::max<std::uint64_t>(root, 2));
    std::vector<std::uint64_t> primes;
    primes.reserve(static_cast<std::size_t>(estimate));
    primes.push_back(2);

    // Odd numbers only: slot i of a segment stands for low + 2i.
    constexpr std::uint64_t kSlots = std::uint64_t{1} << 18;
    std::vector<char> composite(kSlots);
    for (std::uint64_t low = 3; low <= limit; low += 2 * kSlots) {
        std::uint64_t high = std::min(limit, low + 2 * kSlots - 1);  // inclusive
        std::uint64_t slots = (high - low) / 2 + 1;
        std::fill(composite.begin(), composite.begin() + static_cast<std::ptrdiff_t>(slots), 0);
        for (std::uint64_t p : base) {
            if (p == 2) continue;
            if (p * p > high) break;
            std::uint64_t start = std::max(p * p, (low + p - 1) / p * p);
            if (start % 2 == 0) start += p;
            for (std::uint64_t v = start; v <= high; v += 2 * p) composite[(v - low) / 2] = 1;
        }
        for (std::uint64_t i = 0; i < slots; ++i)
            if (!composite[i]) primes.push_back(low + 2 * i);
    }
    return PrimeTable(limit, std::move(primes));
}

const PrimeTable& small_primes() {
    static const PrimeTable table = sieve_primes(100000);
    return table;
}

SmallestFactorTable::SmallestFactorTable(std::uint64_t limit) : spf_(limit + 1, 0) {
    if (limit > 0xFFFFFFFFull) throw BudgetError("smallest-factor table limited to 32-bit entries");
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (spf_[i] != 0) continue;
        spf_[i] = static_cast<std::uint32_t>(i);
        if (i * i > limit) continue;
        for (std::uint64_t j = i * i; j <= limit; j += i)
            if (spf_[j] == 0) spf_[j] = static_cast<std::uint32_t>(i);
    }
}

Factorization SmallestFactorTable::factor(std::uint64_t n) const {
    if (n == 0 || n > limit()) throw RangeError("smallest-factor table queried out of range");
    Factorization f;
    f.n = n;
    while (n > 1) {
        std::uint64_t p = spf_[n];
        std::uint32_t e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        f.factors.push_back({p, e});
    }
    return f;
}

std::vector<std::int8_t> mobius_table(std::uint64_t limit) {
    std::vector<std::int8_t> mu(limit + 1, 1);
    std::vector<char> composite(limit + 1, 0);
    mu[0] = 0;
    for (std::uint64_t p = 2; p <= limit; ++p) {
        if (composite[p]) continue;
        for (std::uint64_t j = p; j <= limit; j += p) {
            if (j > p) composite[j] = 1;
            mu[j] = static_cast<std::int8_t>(-mu[j]);
        }
        if (p <= limit / p)
            for (std::uint64_t j = p * p; j <= limit; j += p * p) mu[j] = 0;
    }
    return mu;
}

std::uint64_t gcd(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

std::uint64_t lcm(std::uint64_t a, std::uint64_t b) {
    if (a == 0 || b == 0) return 0;
    return a / std::gcd(a, b) * b;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t m) {
    if (m == 1) return 0;
    std::int64_t t = 0, nt = 1;
    std::int64_t r = static_cast<std::int64_t>(m), nr = static_cast<std::int64_t>(a % m);
    while (nr != 0) {
        std::int64_t q = r / nr;
        std::tie(t, nt) = std::make_pair(nt, t - q * nt);
        std::tie(r, nr) = std::make_pair(nr, r - q * nr);
    }
    if (r != 1) throw DomainError("invmod: arguments not coprime");
    return mod(t, m);
}

std::uint64_t mod(std::int64_t a, std::uint64_t m) {
    if (a >= 0) return static_cast<std::uint64_t>(a) % m;
    std::uint64_t r = (static_cast<std::uint64_t>(-(a + 1)) % m);
    return m - 1 - r;
}

}  // namespace envsieve::arith
