#include <algorithm>
#include <cstdlib>

#include "envsieve/arith.hpp"
#include "envsieve/errors.hpp"
#include "envsieve/spectra.hpp"

namespace envsieve::spectra {

namespace {
constexpr std::uint64_t kSieveCeiling = 4000000000ULL;
}

TupleSet enumerate_tuples(const forms::LinearSystem& F, std::uint64_t N) {
    if (N == 0) throw DomainError("N must be positive");
    if (!forms::nondegenerate(F)) throw DegenerateFormError("F = " + F.to_string() + " has a prime p with gamma(p) = 0");
    std::uint64_t top = 0;
    for (const auto& f : F.forms()) {
        std::uint64_t a = static_cast<std::uint64_t>(std::llabs(f.a));
        std::uint64_t b = static_cast<std::uint64_t>(std::llabs(f.b));
        if (a > N || b > N) throw HypothesisError("coefficients of F must satisfy |a|, |b| <= N");
        top = std::max(top, a * N + b);
    }

    TupleSet out{F, N, {}};
    std::vector<bool> mark;
    if (top <= kSieveCeiling) {
        mark.assign(top + 1, false);
        auto table = arith::sieve_primes(std::max<std::uint64_t>(top, 2));
        for (auto p : table.primes()) mark[p] = true;
    }
    auto prime = [&](std::int64_t v) {
        if (v < 2) return false;
        auto u = static_cast<std::uint64_t>(v);
        return mark.empty() ? arith::is_prime(u) : static_cast<bool>(mark[u]);
    };
    for (std::uint64_t n = 1; n <= N; ++n) {
        bool all = true;
        for (const auto& f : F.forms())
            if (!prime(f.a * static_cast<std::int64_t>(n) + f.b)) {
                all = false;
                break;
            }
        if (all) out.members.push_back(n);
    }
    return out;
}

}  // namespace envsieve::spectra
