#include "envsieve/chen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "envsieve/errors.hpp"
#include "envsieve/forms.hpp"
#include "envsieve/parallel.hpp"
#include "envsieve/selberg.hpp"
#include "envsieve/spectra.hpp"

namespace envsieve::chen {

namespace {

// f > p^(num/den), decided in floating point away from the boundary and by
// f^den > p^num exactly near it.
bool exceeds_power(std::uint64_t f, std::uint64_t p, const Rational& e) {
    unsigned long num = e.get_num().get_ui(), den = e.get_den().get_ui();
    double lhs = static_cast<double>(den) * std::log(static_cast<double>(f));
    double rhs = static_cast<double>(num) * std::log(static_cast<double>(p));
    if (std::fabs(lhs - rhs) > 1e-9 * (1.0 + std::fabs(rhs))) return lhs > rhs;
    Integer a, b;
    mpz_pow_ui(a.get_mpz_t(), to_integer(f).get_mpz_t(), den);
    mpz_pow_ui(b.get_mpz_t(), to_integer(p).get_mpz_t(), num);
    return a > b;
}

std::optional<ChenRecord> classify_with(std::uint64_t p, const arith::Factorization& partner, const Rational& e) {
    ChenRecord r;
    r.p = p;
    r.exponent = e;
    for (auto [q, k] : partner.factors)
        for (unsigned i = 0; i < k; ++i) r.factors_of_p_plus_2.push_back(q);
    if (r.factors_of_p_plus_2.size() == 1) {
        r.kind = PartnerKind::prime;
        return r;
    }
    if (r.factors_of_p_plus_2.size() != 2) return std::nullopt;
    for (auto q : r.factors_of_p_plus_2)
        if (!exceeds_power(q, p, e)) return std::nullopt;
    r.kind = PartnerKind::semiprime;
    return r;
}

void check_exponent(const Rational& e) {
    if (e <= 0 || e >= 1) throw DomainError("Chen exponent must lie in (0, 1)");
}

std::uint64_t table_limit(std::uint64_t limit, const Rational& e) {
    check_exponent(e);
    if (limit > factoring_budget())
        throw BudgetError("Chen scan limit " + std::to_string(limit) + " exceeds the factoring budget");
    return limit + 2;
}

}  // namespace

std::string_view kind_name(PartnerKind k) { return k == PartnerKind::prime ? "prime" : "semiprime"; }

Rational default_exponent() { return Rational(3, 11); }

std::uint64_t factoring_budget() {
    if (const char* env = std::getenv("SELBERG_BUDGET")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end == env || *end != '\0' || v == 0) throw ParseError("SELBERG_BUDGET must be a positive integer");
        return v;
    }
    return 10000000;
}

std::optional<ChenRecord> is_chen(std::uint64_t p, const Rational& exponent) {
    check_exponent(exponent);
    if (!arith::is_prime(p)) throw HypothesisError(std::to_string(p) + " is not prime");
    return classify_with(p, arith::factor(p + 2), exponent);
}

ChenSieve::ChenSieve(std::uint64_t limit, Rational exponent)
    : limit_(limit), exponent_(std::move(exponent)), table_(table_limit(limit, exponent_)) {}

std::optional<ChenRecord> ChenSieve::classify(std::uint64_t p) const {
    if (p > limit_) throw RangeError("prime beyond the sieve limit");
    if (!table_.is_prime(p)) return std::nullopt;
    return classify_with(p, table_.factor(p + 2), exponent_);
}

bool ChenSieve::is_chen(std::uint64_t p) const {
    if (p > limit_ || !table_.is_prime(p)) return false;
    std::uint64_t m = p + 2;
    std::uint64_t q1 = table_.spf(m);
    if (q1 == m) return true;
    std::uint64_t q2 = m / q1;
    if (!table_.is_prime(q2)) return false;
    return exceeds_power(q1, p, exponent_) && exceeds_power(q2, p, exponent_);
}

std::vector<std::uint64_t> ChenSieve::chen_primes(std::uint64_t lo, std::uint64_t hi) const {
    hi = std::min(hi, limit_);
    std::vector<std::uint64_t> out;
    for (std::uint64_t p = std::max<std::uint64_t>(lo, 2); p <= hi; ++p)
        if (is_chen(p)) out.push_back(p);
    return out;
}

std::vector<ChenRecord> chen_records(std::uint64_t N, const Rational& exponent) {
    ChenSieve s(N, exponent);
    std::vector<ChenRecord> out;
    for (std::uint64_t p = 2; p <= N; ++p)
        if (auto r = s.classify(p)) out.push_back(std::move(*r));
    return out;
}

DensityScan chen_density_scan(std::uint64_t N, const Rational& exponent) {
    if (N < 2) throw DomainError("density scan needs N >= 2");
    ChenSieve s(N, exponent);
    auto all = s.chen_primes(2, N);
    DensityScan scan{N, {}};
    for (std::uint64_t j = 0; (N >> j) >= 2; ++j) {
        DensityInterval iv;
        iv.hi = N >> j;
        iv.lo = N >> (j + 1);
        iv.count = static_cast<std::uint64_t>(std::upper_bound(all.begin(), all.end(), iv.hi) -
                                              std::upper_bound(all.begin(), all.end(), iv.lo));
        double L = std::log(static_cast<double>(iv.hi));
        iv.normalized = static_cast<double>(iv.count) * L * L / static_cast<double>(iv.hi);
        scan.intervals.push_back(iv);
    }
    return scan;
}

WTrick w_trick(double t) {
    if (!(t >= 3)) throw DomainError("W-trick needs t >= 3");
    if (t > 31) throw RangeError("W overflows 64 bits beyond t = 31");
    WTrick wt;
    wt.t = t;
    wt.W = 2;
    std::uint64_t corrected = 1;
    std::vector<std::uint64_t> odd;
    for (std::uint64_t p = 3; static_cast<double>(p) <= t; p += 2)
        if (arith::is_prime(p)) {
            odd.push_back(p);
            wt.W *= p;
            corrected *= p - 2;
        }
    wt.formula_corrected = corrected;
    wt.formula_printed = 2 * corrected;
    if (corrected > factoring_budget()) throw BudgetError("|X_W| exceeds the enumeration budget");

    // Build X_W by CRT, one prime at a time: mod 2 only b = 1 survives.
    std::vector<std::uint64_t> res{1};
    std::uint64_t m = 2;
    for (auto p : odd) {
        std::uint64_t inv = arith::invmod(m % p, p);
        std::vector<std::uint64_t> next;
        next.reserve(res.size() * (p - 2));
        for (auto r : res)
            for (std::uint64_t c = 1; c < p; ++c) {
                if (c == p - 2) continue;
                std::uint64_t k = arith::mulmod((c + p - r % p) % p, inv, p);
                next.push_back(r + m * k);
            }
        res.swap(next);
        m *= p;
    }
    std::sort(res.begin(), res.end());
    wt.residues = std::move(res);
    wt.chosen_b = wt.residues.front();
    return wt;
}

ResidueSelection select_residue(std::uint64_t N, WTrick& wt, const Rational& exponent) {
    std::uint64_t lo = (N + 3) / 4, hi = N / 2;
    if (lo == 0 || lo > hi) throw DomainError("the window [N/4, N/2] is empty");
    ChenSieve s(wt.W * hi + wt.W, exponent);
    ResidueSelection sel;
    sel.counts.assign(wt.residues.size(), 0);
    parallel_for(wt.residues.size(), [&](std::size_t i) {
        std::uint64_t b = wt.residues[i], c = 0;
        for (std::uint64_t n = lo; n <= hi; ++n)
            if (s.is_chen(wt.W * n + b)) ++c;
        sel.counts[i] = c;
    });
    std::size_t best = static_cast<std::size_t>(std::max_element(sel.counts.begin(), sel.counts.end()) - sel.counts.begin());
    sel.b = wt.residues[best];
    for (std::uint64_t n = lo; n <= hi; ++n)
        if (s.is_chen(wt.W * n + sel.b)) sel.X.push_back(n);
    wt.chosen_b = sel.b;
    return sel;
}

DirectAp3 chen_ap3_direct(std::uint64_t N, std::size_t max_witnesses, const Rational& exponent) {
    ChenSieve s(N, exponent);
    auto C = s.chen_primes(2, N);
    std::vector<bool> in(N + 1, false);
    for (auto p : C) in[p] = true;

    DirectAp3 r;
    r.N = N;
    r.chen_count = C.size();
    std::vector<std::uint64_t> per(C.size(), 0);
    parallel_for(C.size(), [&](std::size_t i) {
        std::uint64_t c = 0;
        for (std::size_t j = i + 1; j < C.size(); ++j)
            if (((C[i] ^ C[j]) & 1) == 0 && in[(C[i] + C[j]) / 2]) ++c;
        per[i] = c;
    });
    for (auto c : per) r.triples += c;
    double L = std::log(static_cast<double>(N));
    r.normalized = static_cast<double>(r.triples) * std::pow(L, 6) / (static_cast<double>(N) * static_cast<double>(N));

    for (std::size_t m = 0; m < C.size() && r.witnesses.size() < max_witnesses; ++m)
        for (std::size_t i = m; i-- > 0 && r.witnesses.size() < max_witnesses;) {
            std::uint64_t d = C[m] - C[i];
            if (C[m] + d <= N && in[C[m] + d]) r.witnesses.push_back({C[i], C[m], C[m] + d});
        }
    return r;
}

TransferenceAp3 chen_ap3_transference(std::uint64_t N, double t, const transfer::TransferenceOptions& opts,
                                      const Rational& exponent) {
    TransferenceAp3 r;
    r.N = N;
    r.t = t;
    WTrick wt = w_trick(t);
    auto sel = select_residue(N, wt, exponent);
    r.W = wt.W;
    r.b = sel.b;
    r.X_size = sel.X.size();
    if (sel.X.empty()) throw HypothesisError("no Chen primes in the W-tricked window");
    r.modulus = N;
    while (!arith::is_prime(r.modulus)) ++r.modulus;
    r.R = std::max<std::uint64_t>(2, static_cast<std::uint64_t>(std::floor(std::pow(r.modulus / 2.0, 0.25))));

    forms::LinearSystem F({{static_cast<std::int64_t>(wt.W), static_cast<std::int64_t>(sel.b)},
                           {static_cast<std::int64_t>(wt.W), static_cast<std::int64_t>(sel.b + 2)}});
    selberg::SieveKit kit(F, r.R);
    auto nu = spectra::cyclic_beta(kit, r.modulus);
    r.c = nu[sel.X.front() % r.modulus];
    for (auto x : sel.X) r.c = std::min(r.c, nu[x % r.modulus]);
    if (!(r.c > 0)) throw HypothesisError("nu vanishes on part of X; raise N or lower R");
    double L = std::log(static_cast<double>(N)), Lt = std::log(t);
    r.paper_scale = L * L / (Lt * Lt);

    std::vector<double> f(r.modulus, 0.0);
    for (auto x : sel.X) f[x % r.modulus] = r.c;
    r.report = transfer::transference_run(transfer::CyclicFunction(std::move(f)), transfer::CyclicFunction(nu), opts);
    double m = static_cast<double>(r.modulus);
    r.transference_count = (r.report.ap_count_f * m * m / (r.c * r.c * r.c) - static_cast<double>(r.X_size)) / 2;

    std::vector<bool> in(N + 1, false);
    for (auto x : sel.X) in[x] = true;
    for (std::size_t i = 0; i < sel.X.size(); ++i)
        for (std::size_t j = i + 1; j < sel.X.size(); ++j) {
            std::uint64_t top = 2 * sel.X[j] - sel.X[i];
            if (top <= N && in[top]) ++r.direct_count;
        }
    return r;
}

FlatnessReport nu_fourier_flatness(const WTrick& wt, std::uint64_t R, std::uint64_t N) {
    if (R == 0 || R * R > N) throw HypothesisError("nu_fourier_flatness needs R^2 <= N");
    FlatnessReport r;
    r.W = wt.W;
    r.b = wt.chosen_b;
    r.R = R;
    r.N = N;
    forms::LinearSystem F({{static_cast<std::int64_t>(wt.W), static_cast<std::int64_t>(wt.chosen_b)},
                           {static_cast<std::int64_t>(wt.W), static_cast<std::int64_t>(wt.chosen_b + 2)}});
    selberg::SieveKit kit(F, R);
    auto nuh = transfer::dft(spectra::cyclic_beta(kit, N));
    for (std::uint64_t a = 0; a < N; ++a) {
        double d = std::abs(nuh[a] - (a == 0 ? cplx(1, 0) : cplx(0, 0)));
        if (d > r.max_deviation) {
            r.max_deviation = d;
            r.argmax = a;
        }
    }
    r.zero_deviation = std::abs(nuh[0] - cplx(1, 0));
    auto table = selberg::FourierTable::build(kit);
    r.small_q_vanish = true;
    for (const auto& e : table.entries())
        if (e.frac.q > 1 && static_cast<double>(e.frac.q) <= wt.t) {
            ++r.small_q_checked;
            if (e.w != cplx(0, 0)) r.small_q_vanish = false;
        }
    return r;
}

}  // namespace envsieve::chen
