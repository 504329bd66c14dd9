#include <algorithm>
#include <cmath>
#include <numbers>

#include "envsieve/arith.hpp"
#include "envsieve/errors.hpp"
#include "envsieve/kernels.hpp"
#include "envsieve/transfer.hpp"

namespace envsieve::transfer {

namespace {

struct Split {
    BohrSet B;
    std::vector<std::uint64_t> omega;
    std::vector<cplx> f1hat, f2hat;
    double ap_f1 = 0;
};

Split split_at(const std::vector<cplx>& fh, double eps, std::uint64_t N) {
    Split s;
    s.omega = large_spectrum(fh, eps);
    s.B = bohr_set(s.omega, eps, N);
    auto mult = bohr_multiplier(s.B);
    s.f1hat.resize(N);
    s.f2hat.resize(N);
    for (std::uint64_t a = 0; a < N; ++a) {
        s.f1hat[a] = fh[a] * mult[a];
        s.f2hat[a] = fh[a] - s.f1hat[a];
    }
    s.ap_f1 = trilinear_fourier(s.f1hat, s.f1hat, s.f1hat);
    return s;
}

}  // namespace

TransferenceReport transference_run(const CyclicFunction& f, const CyclicFunction& nu, const TransferenceOptions& opts) {
    std::uint64_t N = f.N();
    if (nu.N() != N) throw ContractError("f and nu must share N");
    if (!arith::is_prime(N)) throw HypothesisError("transference runs need N prime");
    if (N == 2) throw HypothesisError("transference runs need N odd");
    if (!(opts.q > 2 && opts.q < 3)) throw DomainError("q must lie in (2, 3)");
    for (std::uint64_t n = 0; n < N; ++n)
        if (f[n] < 0 || f[n] > nu[n]) throw ContractError("majorization 0 <= f <= nu fails at n = " + std::to_string(n));

    TransferenceReport r;
    r.N = N;
    r.q_exponent = opts.q;
    r.delta = f.mean();
    auto nuh = dft(nu);
    for (std::uint64_t a = 0; a < N; ++a) r.eta = std::max(r.eta, std::abs(nuh[a] - (a == 0 ? cplx(1, 0) : cplx(0, 0))));
    auto fh = dft(f);
    r.M = std::pow(kernels::sum_abs_pow(fh, opts.q), 1.0 / opts.q);

    double Mq = std::pow(r.M, opts.q);
    Split s;
    if (opts.eps > 0) {
        r.eps = opts.eps;
        s = split_at(fh, r.eps, N);
    } else {
        // Shrink eps until the residual surrogate M^q eps^{3-q} falls below ap(f1)/14.
        r.eps = std::min(1.99, std::pow(r.delta / (4 * r.M), 1.0 / (3 - opts.q)));
        for (;;) {
            s = split_at(fh, r.eps, N);
            if (Mq * std::pow(r.eps, 3 - opts.q) < s.ap_f1 / 14 || r.eps_halvings >= opts.max_halvings) break;
            r.eps /= 2;
            ++r.eps_halvings;
        }
    }

    r.omega_size = s.omega.size();
    r.bohr_size = s.B.members.size();
    r.bohr_lower_bound = std::pow(r.eps / (2 * std::numbers::pi), static_cast<double>(r.omega_size)) * static_cast<double>(N) / 2;
    r.ap_count_f = trilinear_fourier(fh, fh, fh);
    r.ap_count_f1 = s.ap_f1;
    const std::vector<cplx>* part[2] = {&s.f1hat, &s.f2hat};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) r.components[4 * i + 2 * j + k] = trilinear_fourier(*part[i], *part[j], *part[k]);
    for (int c = 1; c < 8; ++c) r.residual_terms += r.components[c];

    double linf = 0;
    r.f2_dominated = true;
    for (std::uint64_t a = 0; a < N; ++a) {
        double m = std::abs(s.f2hat[a]);
        linf = std::max(linf, m);
        if (m > std::abs(fh[a]) * (1 + 1e-12) + 1e-15) r.f2_dominated = false;
    }
    r.f2_linf = linf;
    r.f2_linf_prediction = std::max(r.eps, 3 * r.eps * (1 + r.eta));
    r.residual_bound = kernels::sum_abs_pow(s.f2hat, opts.q) * std::pow(linf, 3 - opts.q);

    auto f1 = inverse_dft(s.f1hat);
    r.f1_max = -1e300;
    r.f1_min = 1e300;
    for (const auto& z : f1) {
        r.f1_max = std::max(r.f1_max, z.real());
        r.f1_min = std::min(r.f1_min, z.real());
    }
    r.f1_dominance_bound = 1 + r.eta * static_cast<double>(N) / static_cast<double>(r.bohr_size);
    return r;
}

}  // namespace envsieve::transfer
