#include <algorithm>
#include <bit>
#include <tuple>

#include "envsieve/errors.hpp"
#include "envsieve/parallel.hpp"
#include "envsieve/selberg.hpp"

namespace envsieve::selberg {

namespace {

// Per-prime data for evaluating s(a/q) at every a for one squarefree q.
struct LocalPrime {
    std::uint64_t p;
    std::uint64_t cofactor_inverse;  // (q/p)^{-1} mod p
    std::vector<std::uint64_t> roots;
};

std::vector<LocalPrime> local_primes(const forms::LinearSystem& F, std::uint64_t q,
                                     const arith::Factorization& f) {
    std::vector<LocalPrime> out;
    for (auto [p, e] : f.factors) {
        LocalPrime lp{p, arith::invmod((q / p) % p, p), F.roots_mod_prime(p)};
        if (lp.roots.size() == p) throw DegenerateFormError("gamma(q) = 0, so s(a/q) is undefined");
        out.push_back(std::move(lp));
    }
    return out;
}

cplx s_from_locals(const std::vector<LocalPrime>& locals, std::uint64_t a) {
    cplx s = 1.0;
    for (const auto& lp : locals) {
        std::uint64_t ap = arith::mulmod(a % lp.p, lp.cofactor_inverse, lp.p);
        cplx sum = 0.0;
        for (std::uint64_t r : lp.roots) sum += unit_root(static_cast<std::int64_t>(arith::mulmod(ap, r, lp.p)), lp.p);
        s *= -sum / static_cast<double>(lp.p - lp.roots.size());
    }
    return s;
}

void check_reduced(ReducedFraction frac) {
    if (frac.q == 0 || frac.a >= frac.q || arith::gcd(frac.a, frac.q) != 1)
        if (!(frac.q == 1 && frac.a == 0)) throw DomainError("fraction is not reduced");
}

}  // namespace

cplx s_coeff_direct(const forms::LinearSystem& F, ReducedFraction frac) {
    check_reduced(frac);
    auto local = forms::local_data(F, frac.q);
    if (local.residues.empty()) throw DegenerateFormError("gamma(q) = 0, so s(a/q) is undefined");
    cplx sum = 0.0;
    for (std::uint64_t n : local.residues) sum += unit_root(static_cast<std::int64_t>(arith::mulmod(frac.a, n, frac.q)), frac.q);
    return sum / static_cast<double>(local.residues.size());
}

cplx s_coeff(const forms::LinearSystem& F, ReducedFraction frac) {
    check_reduced(frac);
    if (frac.q == 1) return 1.0;
    auto f = arith::factor(frac.q);
    if (!f.squarefree()) {
        for (auto [p, e] : f.factors)
            if (F.roots_mod_prime(p).size() == p) throw DegenerateFormError("gamma(q) = 0, so s(a/q) is undefined");
        return 0.0;
    }
    return s_from_locals(local_primes(F, frac.q, f), frac.a);
}

Rational w_factor(const SieveKit& kit, std::uint64_t q) {
    if (q == 0) throw DomainError("modulus must be positive");
    auto f = arith::factor(q);
    if (!f.squarefree()) return 0;
    // Divisors of q as bitmasks over its prime factors.
    const unsigned k = f.omega();
    std::vector<std::uint64_t> value(std::size_t{1} << k, 1);
    for (std::size_t m = 0; m < value.size(); ++m)
        for (unsigned i = 0; i < k; ++i)
            if (m >> i & 1) value[m] *= f.factors[i].prime;

    const std::uint64_t R = kit.level();
    Rational total = 0;
    for (std::uint64_t t : kit.support()) {
        std::uint64_t qt = q / arith::gcd(q, t);
        std::uint64_t L = R / t;
        std::size_t qmask = 0;
        for (unsigned i = 0; i < k; ++i)
            if (qt % f.factors[i].prime == 0) qmask |= std::size_t{1} << i;
        long S = 0;
        // l1, l2 run over divisors of qt (submasks of qmask) with l1, l2 <= L and
        // qt | l1 l2. Then l1 l2 / qt is the product of the shared primes and
        // A(l1, l2) = mu(l1 l2 / qt).
        for (std::size_t m1 = qmask;; m1 = (m1 - 1) & qmask) {
            if (value[m1] <= L) {
                for (std::size_t m2 = qmask;; m2 = (m2 - 1) & qmask) {
                    if (value[m2] <= L && (m1 | m2) == qmask) S += (std::popcount(m1 & m2) & 1) ? -1 : 1;
                    if (m2 == 0) break;
                }
            }
            if (m1 == 0) break;
        }
        if (S != 0) total += kit.h(t) * S;
    }
    return total / kit.G();
}

cplx w_coeff(const SieveKit& kit, ReducedFraction frac) {
    check_reduced(frac);
    const std::uint64_t R = kit.level();
    if (frac.q > R * R) throw RangeError("w(a/q) is defined here only for q <= R^2");
    if (frac.q == 1) return 1.0;
    cplx s = s_coeff(kit.form(), frac);
    if (s == 0.0) return 0.0;
    return s * w_factor(kit, frac.q).get_d();
}

AlphaFourier::AlphaFourier(const SieveKit& kit) {
    for (std::uint64_t q = 1; q <= kit.level(); ++q) {
        auto f = arith::factor(q);
        if (!f.squarefree()) continue;  // s vanishes
        if (q == 1) {
            terms_.push_back({0, 1, 1.0});
            continue;
        }
        auto locals = local_primes(kit.form(), q, f);
        for (std::uint64_t a = 1; a < q; ++a)
            if (arith::gcd(a, q) == 1) terms_.push_back({a, q, s_from_locals(locals, a)});
    }
}

cplx AlphaFourier::operator()(std::int64_t n) const {
    cplx sum = 0.0;
    for (const auto& t : terms_)
        sum += t.s * unit_root(-static_cast<std::int64_t>(arith::mulmod(t.a, arith::mod(n, t.q), t.q)), t.q);
    return sum;
}

cplx alpha_fourier(const SieveKit& kit, std::int64_t n) { return AlphaFourier(kit)(n); }

FourierTable FourierTable::build(const SieveKit& kit) {
    const std::uint64_t R = kit.level();
    const std::uint64_t Q = R * R;
    std::vector<std::vector<FourierEntry>> rows(Q + 1);
    parallel_for(Q, [&](std::size_t i) {
        std::uint64_t q = i + 1;
        auto& row = rows[q];
        if (q == 1) {
            row.push_back({{0, 1}, 1.0, 1.0});
            return;
        }
        auto f = arith::factor(q);
        if (!f.squarefree()) {
            for (std::uint64_t a = 1; a < q; ++a)
                if (arith::gcd(a, q) == 1) row.push_back({{a, q}, 0.0, 0.0});
            return;
        }
        auto locals = local_primes(kit.form(), q, f);
        double factor = w_factor(kit, q).get_d();
        for (std::uint64_t a = 1; a < q; ++a) {
            if (arith::gcd(a, q) != 1) continue;
            cplx s = s_from_locals(locals, a);
            cplx w = s == 0.0 ? cplx(0.0) : s * factor;
            row.push_back({{a, q}, s, w});
        }
    });
    FourierTable t;
    t.R_ = R;
    for (auto& row : rows)
        for (auto& e : row) t.entries_.push_back(e);
    for (std::size_t i = 0; i < t.entries_.size(); ++i)
        if (t.entries_[i].w != 0.0) t.nonzero_.push_back(i);
    return t;
}

const FourierEntry* FourierTable::find(ReducedFraction frac) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), frac,
                               [](const FourierEntry& e, ReducedFraction f) {
                                   return std::tie(e.frac.q, e.frac.a) < std::tie(f.q, f.a);
                               });
    if (it == entries_.end() || it->frac != frac) return nullptr;
    return &*it;
}

cplx FourierTable::evaluate(std::int64_t n) const {
    cplx sum = 0.0;
    for (std::size_t i : nonzero_) {
        const auto& e = entries_[i];
        sum += e.w * unit_root(-static_cast<std::int64_t>(arith::mulmod(e.frac.a, arith::mod(n, e.frac.q), e.frac.q)),
                               e.frac.q);
    }
    return sum;
}

double verify_expansion(const SieveKit& kit, const FourierTable& table, std::int64_t lo, std::int64_t hi) {
    if (table.level() != kit.level()) throw ContractError("Fourier table was built at a different level");
    if (hi < lo) return 0.0;
    std::size_t count = static_cast<std::size_t>(hi - lo + 1);
    std::vector<double> dev(count);
    parallel_for(count, [&](std::size_t i) {
        std::int64_t n = lo + static_cast<std::int64_t>(i);
        dev[i] = std::abs(beta_periodic(kit, n).get_d() - table.evaluate(n));
    });
    return *std::max_element(dev.begin(), dev.end());
}

double indicator_expansion_check(const forms::LinearSystem& F, std::uint64_t M) {
    if (M == 0 || M > 10000) throw RangeError("indicator expansion is checked for 1 <= M <= 10^4");
    auto local = forms::local_data(F, M);
    if (local.residues.empty()) throw DegenerateFormError("gamma(M) = 0");
    std::vector<char> member(M, 0);
    for (std::uint64_t r : local.residues) member[r] = 1;
    struct Term {
        std::uint64_t a, q;
        cplx s;
    };
    std::vector<Term> terms;
    for (std::uint64_t q : arith::divisors(arith::factor(M))) {
        if (q == 1) {
            terms.push_back({0, 1, s_coeff_direct(F, {0, 1})});
            continue;
        }
        for (std::uint64_t a = 1; a < q; ++a)
            if (arith::gcd(a, q) == 1) terms.push_back({a, q, s_coeff_direct(F, {a, q})});
    }
    const double g = local.gamma.get_d();
    double worst = 0.0;
    for (std::uint64_t n = 0; n < M; ++n) {
        cplx sum = 0.0;
        for (const auto& t : terms)
            sum += t.s * unit_root(-static_cast<std::int64_t>(arith::mulmod(t.a, n % t.q, t.q)), t.q);
        worst = std::max(worst, std::abs(static_cast<double>(member[n]) - g * sum));
    }
    return worst;
}

Rational divisor_split_sum(const forms::LinearSystem& F, std::uint64_t q, std::int64_t n) {
    Rational s = 0;
    for (std::uint64_t d : arith::divisors(arith::factor(q))) {
        int mu = arith::mobius(d);
        if (mu == 0) continue;
        std::uint64_t r = q / d;
        if (!F.coprime(r, n)) continue;
        Rational g = forms::gamma_of(F, r);
        if (g == 0) throw DegenerateFormError("gamma(r) = 0");
        s += mu > 0 ? 1 / g : -1 / g;
    }
    return s;
}

}  // namespace envsieve::selberg
