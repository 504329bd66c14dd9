#include <cmath>

#include "envsieve/errors.hpp"
#include "envsieve/forms.hpp"

namespace envsieve::forms {

LocalData local_data(const LinearSystem& F, std::uint64_t q) {
    if (q == 0) throw DomainError("modulus must be positive");
    if (q > kLocalDataLimit) throw RangeError("local_data enumerates residues only for q <= 10^6; use gamma_of");
    LocalData out;
    out.q = q;
    for (std::uint64_t n = 0; n < q; ++n)
        if (F.coprime(q, static_cast<std::int64_t>(n))) out.residues.push_back(n);
    out.gamma = ratio(out.residues.size(), q);
    return out;
}

namespace {

bool divides_leading_or_discriminant(const LinearSystem& F, std::uint64_t p) {
    if (mpz_divisible_ui_p(F.discriminant().get_mpz_t(), p)) return true;
    for (const auto& f : F.forms())
        if (arith::mod(f.a, p) == 0) return true;
    return false;
}

}  // namespace

Rational gamma_prime(const LinearSystem& F, std::uint64_t p) {
    if (p > F.k() && !divides_leading_or_discriminant(F, p)) return ratio(p - F.k(), p);
    return ratio(p - F.roots_mod_prime(p).size(), p);
}

Rational gamma_of(const LinearSystem& F, std::uint64_t q) {
    if (q == 0) throw DomainError("modulus must be positive");
    Rational g = 1;
    for (auto [p, e] : arith::factor(q).factors) g *= gamma_prime(F, p);
    return g;
}

bool nondegenerate(const LinearSystem& F) {
    for (const auto& f : F.forms())
        if (arith::gcd(static_cast<std::uint64_t>(std::llabs(f.a)), static_cast<std::uint64_t>(std::llabs(f.b))) != 1)
            return false;
    for (std::uint64_t p : arith::small_primes().primes()) {
        if (p > F.k()) break;
        if (gamma_prime(F, p) == 0) return false;
    }
    return true;
}

bool nondegenerate_by_discriminant(const LinearSystem& F) {
    Integer d = abs(F.discriminant());
    std::uint64_t largest = 1;
    for (std::uint64_t p : arith::small_primes().primes()) {
        if (d == 1) break;
        if (mpz_divisible_ui_p(d.get_mpz_t(), p)) {
            largest = p;
            while (mpz_divisible_ui_p(d.get_mpz_t(), p)) mpz_divexact_ui(d.get_mpz_t(), d.get_mpz_t(), p);
        }
    }
    if (d != 1) {
        if (!d.fits_ulong_p()) throw BudgetError("discriminant has a large prime factor beyond the factoring budget");
        auto f = arith::factor(d.get_ui());
        largest = std::max(largest, f.factors.back().prime);
    }
    std::uint64_t bound = std::max<std::uint64_t>(F.k(), largest);
    for (std::uint64_t p = 2; p <= bound; ++p)
        if (arith::is_prime(p) && gamma_prime(F, p) == 0) return false;
    return true;
}

SingularSeries singular_series(const LinearSystem& F, std::uint64_t truncation_prime) {
    if (!nondegenerate(F)) throw DegenerateFormError("singular series of a degenerate system vanishes");
    const std::uint64_t k = F.k();
    const std::uint64_t P = std::max<std::uint64_t>({truncation_prime, 2 * k, 2});

    // Every prime dividing Delta * prod a_j must lie inside the product.
    Integer rest = abs(F.discriminant());
    for (const auto& f : F.forms()) rest *= to_integer(f.a);
    rest = abs(rest);
    arith::PrimeTable table = arith::sieve_primes(P);
    for (std::uint64_t p : table.primes()) {
        if (rest == 1) break;
        while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
    }
    if (rest != 1)
        throw HypothesisError("truncation prime must be at least every prime factor of the discriminant and of the a_j");

    long double value = 1.0L;
    for (std::uint64_t p : table.primes()) {
        std::uint64_t r = F.roots_mod_prime(p).size();
        long double lp = static_cast<long double>(p);
        long double factor = (lp - r) / (lp - 1.0L);
        for (std::uint64_t j = 1; j < k; ++j) factor *= lp / (lp - 1.0L);
        value *= factor;
    }

    // sum_{p > P} 1/p^2 <= int_P^oo 2 pi(x) x^-3 dx with pi(x) < 1.25506 x / log x.
    double lp = static_cast<double>(P);
    double prime_tail = 2.0 * 1.25506 / (lp * std::log(lp));
    double kk = static_cast<double>(k);
    SingularSeries s;
    s.value = static_cast<double>(value);
    s.truncation_prime = P;
    s.log_tail_bound = k == 1 ? 0.0 : kk * kk / (1.0 - kk / lp) * prime_tail;
    s.tail_bound = s.value * std::expm1(s.log_tail_bound);
    return s;
}

}  // namespace envsieve::forms
