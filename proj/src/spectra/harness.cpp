#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <unordered_set>

#include "envsieve/errors.hpp"
#include "envsieve/fft.hpp"
#include "envsieve/kernels.hpp"
#include "envsieve/parallel.hpp"
#include "envsieve/spectra.hpp"

namespace envsieve::spectra {

namespace {

void require_farey_separation(const selberg::SieveKit& kit, std::uint64_t N) {
    double R = static_cast<double>(kit.level());
    if (static_cast<double>(N) < 2.0 * R * R * R * R) throw HypothesisError("harness needs N >= 2 R^4");
}

constexpr std::size_t kChunk = std::size_t{1} << 18;

}  // namespace

std::vector<double> cyclic_beta(const selberg::SieveKit& kit, std::uint64_t N) {
    std::vector<double> out(N);
    std::size_t chunks = static_cast<std::size_t>((N + kChunk - 1) / kChunk);
    parallel_for(chunks, [&](std::size_t c) {
        std::uint64_t lo = 1 + c * kChunk;
        std::size_t len = static_cast<std::size_t>(std::min<std::uint64_t>(kChunk, N - lo + 1));
        auto v = selberg::beta_values(kit, static_cast<std::int64_t>(lo), len);
        for (std::size_t i = 0; i < len; ++i) out[(lo + i) % N] = v[i];
    });
    return out;
}

RestrictionRatio restriction_ratio(std::span<const double> beta, std::span<const cplx> f, double q) {
    if (beta.size() != f.size()) throw ContractError("f and beta must share the modulus N");
    auto g = fft::backward(f);
    RestrictionRatio r;
    r.lhs = kernels::weighted_sum_abs2(beta, g) / static_cast<double>(f.size());
    r.rhs = std::pow(kernels::sum_abs_pow(f, q), 2.0 / q);
    r.ratio = r.rhs > 0 ? r.lhs / r.rhs : 0.0;
    return r;
}

RestrictionReport restriction_check(const selberg::SieveKit& kit, std::uint64_t N, std::size_t trials, double q,
                                    std::uint64_t seed) {
    require_farey_separation(kit, N);
    if (!(q > 1 && q < 2)) throw DomainError("restriction exponent q must lie in (1, 2)");
    auto beta = cyclic_beta(kit, N);

    // Trial inputs are drawn serially so the report depends only on the seed.
    struct Spec {
        std::string kind;
        std::vector<std::pair<std::uint64_t, cplx>> terms;
    };
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> phase(0.0, 2 * std::numbers::pi);
    std::vector<Spec> specs;
    unsigned max_log = std::min<unsigned>(10, static_cast<unsigned>(std::log2(static_cast<double>(N))) - 1);
    for (std::size_t t = 0; t < trials; ++t) {
        Spec s;
        if (t == 0) {
            s.kind = "delta";
            s.terms.push_back({0, cplx(1, 0)});
        } else if (t == 1) {
            s.kind = "delta";
            s.terms.push_back({rng() % N, std::polar(1.0, phase(rng))});
        } else {
            std::size_t size = std::size_t{1} << (1 + rng() % max_log);
            if (t % 2 == 0) {
                s.kind = "random";
                std::unordered_set<std::uint64_t> seen;
                while (seen.size() < size) seen.insert(rng() % N);
                std::vector<std::uint64_t> b(seen.begin(), seen.end());
                std::sort(b.begin(), b.end());
                for (auto x : b) s.terms.push_back({x, std::polar(1.0, phase(rng))});
            } else {
                s.kind = "progression";
                std::uint64_t start = rng() % N;
                std::uint64_t step = 1 + rng() % std::max<std::uint64_t>(1, N / size - 1);
                for (std::size_t j = 0; j < size; ++j) s.terms.push_back({(start + j * step) % N, cplx(1, 0)});
            }
        }
        specs.push_back(std::move(s));
    }

    RestrictionReport rep;
    rep.R = kit.level();
    rep.N = N;
    rep.q = q;
    rep.seed = seed;
    rep.trials.resize(trials);
    parallel_for(trials, [&](std::size_t t) {
        std::vector<cplx> f(N, cplx(0, 0));
        for (auto [b, c] : specs[t].terms) f[b] = c;
        auto r = restriction_ratio(beta, f, q);
        rep.trials[t] = {specs[t].kind, specs[t].terms.size(), r.lhs, r.rhs, r.ratio};
    });
    for (const auto& t : rep.trials) rep.max_ratio = std::max(rep.max_ratio, t.ratio);
    return rep;
}

ExtensionReport extension_check(const selberg::SieveKit& kit, std::span<const double> a, double p, unsigned oversample) {
    std::uint64_t N = a.size();
    require_farey_separation(kit, N);
    if (!(p > 2)) throw DomainError("extension exponent p must exceed 2");
    auto beta = cyclic_beta(kit, N);
    double dN = static_cast<double>(N);

    std::vector<cplx> v(N);
    std::vector<double> w(N + 1, 0.0);
    long double energy = 0.0L;
    for (std::uint64_t n = 1; n <= N; ++n) {
        double b = beta[n % N];
        double x = a[n - 1];
        v[n % N] = cplx(x * b, 0);
        w[n] = x * b;
        energy += static_cast<long double>(x) * x * b;
    }
    ExtensionReport r;
    r.p = p;
    r.rhs = std::sqrt(static_cast<double>(energy) / dN);
    auto V = fft::forward(v);
    for (auto& z : V) z /= dN;
    r.lhs_fixed = std::pow(kernels::sum_abs_pow(V, p), 1.0 / p);
    auto S = exp_sum_grid(w, N, oversample);
    r.lhs_variable = std::pow(grid_power_mean(S, p), 1.0 / p) / dN;
    if (r.rhs > 0) {
        r.ratio_fixed = r.lhs_fixed / r.rhs;
        r.ratio_variable = r.lhs_variable / (std::pow(dN, -1.0 / p) * r.rhs);
    }
    return r;
}

std::vector<double> proof_sequence(const selberg::SieveKit& kit, const TupleSet& X) {
    std::vector<double> a(X.N, 0.0);
    for (auto n : X.members) {
        if (!kit.sieved(static_cast<std::int64_t>(n))) continue;
        a[n - 1] = 1.0 / selberg::beta(kit, static_cast<std::int64_t>(n)).get_d();
    }
    return a;
}

double beta_mean(const selberg::SieveKit& kit, std::uint64_t N) {
    std::uint64_t R = kit.level();
    if (R * R > N) throw HypothesisError("beta_mean needs R^2 <= N");
    std::size_t chunks = static_cast<std::size_t>((N + kChunk - 1) / kChunk);
    std::vector<double> partial(chunks);
    parallel_for(chunks, [&](std::size_t c) {
        std::uint64_t lo = 1 + c * kChunk;
        std::size_t len = static_cast<std::size_t>(std::min<std::uint64_t>(kChunk, N - lo + 1));
        auto v = selberg::beta_values(kit, static_cast<std::int64_t>(lo), len);
        partial[c] = pairwise_sum(v.data(), v.size());
    });
    return pairwise_sum(partial.data(), partial.size()) / static_cast<double>(N);
}

double beta_mean_fourier(const selberg::FourierTable& table, std::uint64_t N) {
    if (N == 0) throw DomainError("N must be positive");
    cplx total(0, 0);
    for (const auto& e : table.entries()) {
        if (e.w == cplx(0, 0)) continue;
        if (e.frac.a == 0) {
            total += e.w;
            continue;
        }
        // (1/N) sum_{n=1}^N z^n with z = e_q(-a).
        std::uint64_t q = e.frac.q;
        cplx z = unit_root(-static_cast<std::int64_t>(e.frac.a), q);
        std::uint64_t aN = static_cast<std::uint64_t>((static_cast<unsigned __int128>(e.frac.a) * N) % q);
        cplx zN = unit_root(-static_cast<std::int64_t>(aN), q);
        total += e.w * (z * (1.0 - zN) / (1.0 - z)) / static_cast<double>(N);
    }
    return total.real();
}

double divisor_moment(std::uint64_t B, std::uint64_t N, int m) {
    if (B == 0 || B > N) throw HypothesisError("divisor_moment needs 1 <= B <= N");
    if (m < 1) throw DomainError("moment order must be positive");
    std::uint64_t half = N / 2;
    if (half == 0) throw DomainError("N must be at least 2");
    std::vector<std::uint32_t> count(half + 1, 0);
    for (std::uint64_t q = 1; q <= std::min(B, half); ++q)
        for (std::uint64_t n = q; n <= half; n += q) ++count[n];
    long double s = 0.0L;
    for (std::uint64_t n = 1; n <= half; ++n) s += std::pow(static_cast<long double>(count[n]), m);
    return static_cast<double>(s / static_cast<long double>(half));
}

}  // namespace envsieve::spectra
