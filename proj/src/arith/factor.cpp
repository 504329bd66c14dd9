#include <algorithm>
#include <map>

#include "envsieve/arith.hpp"
#include "envsieve/errors.hpp"

namespace envsieve::arith {

std::uint64_t Factorization::value() const {
    std::uint64_t v = 1;
    for (auto [p, e] : factors)
        for (std::uint32_t i = 0; i < e; ++i) v *= p;
    return v;
}

bool Factorization::squarefree() const {
    return std::all_of(factors.begin(), factors.end(), [](const PrimePower& pp) { return pp.exponent == 1; });
}

unsigned Factorization::big_omega() const {
    unsigned s = 0;
    for (auto [p, e] : factors) s += e;
    return s;
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // This witness set is exact for n < 3.3 * 10^24.
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

namespace {

// Brent's cycle-finding variant of Pollard rho. The constants c = 1, 2, ...
// are tried in order, so the split found for a given n never changes.
std::uint64_t brent_split(std::uint64_t n) {
    if (n % 2 == 0) return 2;
    for (std::uint64_t c = 1;; ++c) {
        std::uint64_t y = 2, x = 2, g = 1, q = 1, ys = 2;
        std::uint64_t r = 1;
        const std::uint64_t m = 128;
        auto f = [&](std::uint64_t v) { return (mulmod(v, v, n) + c) % n; };
        while (g == 1) {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i) y = f(y);
            std::uint64_t k = 0;
            while (k < r && g == 1) {
                ys = y;
                std::uint64_t lim = std::min(m, r - k);
                for (std::uint64_t i = 0; i < lim; ++i) {
                    y = f(y);
                    q = mulmod(q, x > y ? x - y : y - x, n);
                }
                g = gcd(q, n);
                k += m;
            }
            r *= 2;
        }
        if (g == n) {
            do {
                ys = f(ys);
                g = gcd(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

void split_into(std::uint64_t n, std::map<std::uint64_t, std::uint32_t>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        ++out[n];
        return;
    }
    std::uint64_t d = brent_split(n);
    split_into(d, out);
    split_into(n / d, out);
}

}  // namespace

Factorization factor(std::uint64_t n) {
    if (n == 0) throw DomainError("factor(0) is undefined");
    Factorization f;
    f.n = n;
    std::uint64_t m = n;
    for (std::uint64_t p : small_primes().primes()) {
        if (p * p > m) break;
        if (m % p) continue;
        std::uint32_t e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        f.factors.push_back({p, e});
    }
    if (m == 1) return f;
    const std::uint64_t bound = small_primes().limit();
    if (m <= bound * bound || is_prime(m)) {
        f.factors.push_back({m, 1});
        return f;
    }
    std::map<std::uint64_t, std::uint32_t> rest;
    split_into(m, rest);
    for (auto [p, e] : rest) f.factors.push_back({p, e});
    return f;
}

ArithValues arith_functions(const Factorization& f) {
    ArithValues v{1, 1, f.omega()};
    for (auto [p, e] : f.factors) {
        v.mu = e > 1 ? 0 : -v.mu;
        std::uint64_t pe = p - 1;
        for (std::uint32_t i = 1; i < e; ++i) pe *= p;
        v.phi *= pe;
    }
    return v;
}

ArithValues arith_functions(std::uint64_t n) { return arith_functions(factor(n)); }

int mobius(std::uint64_t n) { return arith_functions(n).mu; }

std::uint64_t euler_phi(std::uint64_t n) { return arith_functions(n).phi; }

std::vector<std::uint64_t> divisors(const Factorization& f) {
    std::vector<std::uint64_t> out{1};
    for (auto [p, e] : f.factors) {
        std::size_t base = out.size();
        std::uint64_t pk = 1;
        for (std::uint32_t k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace envsieve::arith
