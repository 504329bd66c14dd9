#include <algorithm>
#include <bit>
#include <cmath>

#include "envsieve/errors.hpp"
#include "envsieve/fft.hpp"
#include "envsieve/kernels.hpp"
#include "envsieve/spectra.hpp"

namespace envsieve::spectra {

Spectrum::Spectrum(std::uint64_t N, std::uint64_t M, std::vector<cplx> half)
    : N_(N), M_(M), half_(std::move(half)) {
    if (M_ % 2 != 0 || half_.size() != M_ / 2 + 1) throw ContractError("half spectrum must hold M/2 + 1 values for even M");
}

cplx Spectrum::value(std::uint64_t j) const {
    j %= M_;
    if (j <= M_ / 2) return half_[j];
    return std::conj(half_[M_ - j]);
}

Spectrum exp_sum_grid(std::span<const double> weights, std::uint64_t N, unsigned oversample, std::size_t grid_budget) {
    if (oversample < 4) throw DomainError("oversample must be at least 4");
    if (weights.size() > N + 1) throw ContractError("weights extend past N");
    std::uint64_t M = oversample * std::bit_ceil(std::max<std::uint64_t>(N, 1));
    // Real input, FFTW buffers and the returned half spectrum.
    if (static_cast<double>(M) * 32.0 > static_cast<double>(grid_budget))
        throw BudgetError("grid of " + std::to_string(M) + " points exceeds the memory budget");
    std::vector<double> x(M, 0.0);
    std::copy(weights.begin(), weights.end(), x.begin());
    auto X = fft::forward_real(x);
    for (auto& z : X) z = std::conj(z);
    return Spectrum(N, M, std::move(X));
}

Spectrum exp_sum_grid(const TupleSet& X, unsigned oversample, bool von_mangoldt, std::size_t grid_budget) {
    std::vector<double> w(X.N + 1, 0.0);
    for (auto n : X.members) {
        double v = 1.0;
        if (von_mangoldt)
            for (const auto& f : X.F.forms()) v *= std::log(static_cast<double>(f.a * static_cast<std::int64_t>(n) + f.b));
        w[n] = v;
    }
    return exp_sum_grid(w, X.N, oversample, grid_budget);
}

double grid_power_mean(const Spectrum& S, double p) {
    if (!(p > 0)) throw DomainError("exponent must be positive");
    auto h = S.half();
    double inner = kernels::sum_abs_pow(h, p);
    double ends = std::pow(std::abs(h.front()), p) + std::pow(std::abs(h.back()), p);
    return (2.0 * inner - ends) / static_cast<double>(S.M());
}

double lp_norm(const Spectrum& S, double p) {
    if (!(p > 2)) throw DomainError("lp_norm needs p > 2");
    return std::pow(grid_power_mean(S, p), 1.0 / p);
}

LpNormReport lp_norm_report(const TupleSet& X, double p, unsigned oversample, bool von_mangoldt) {
    LpNormReport r;
    r.oversample = oversample;
    r.members = X.members.size();
    auto coarse = exp_sum_grid(X, oversample, von_mangoldt);
    r.norm = lp_norm(coarse, p);
    r.exact = std::fmod(p, 2.0) == 0.0 && static_cast<double>(coarse.M()) > (p / 2) * static_cast<double>(X.N);
    r.norm_fine = lp_norm(exp_sum_grid(X, 2 * oversample, von_mangoldt), p);
    r.quadrature_error = r.exact ? 0.0 : std::fabs(r.norm - r.norm_fine);
    return r;
}

MainThmReport mainthm_ratio(const forms::LinearSystem& F, std::uint64_t N, double p, unsigned oversample,
                            bool von_mangoldt) {
    if (N < 3) throw DomainError("mainthm_ratio needs N >= 3");
    auto X = enumerate_tuples(F, N);
    auto lp = lp_norm_report(X, p, oversample, von_mangoldt);
    MainThmReport r;
    r.N = N;
    r.p = p;
    r.members = lp.members;
    r.norm = lp.norm;
    r.quadrature_error = lp.quadrature_error;
    r.singular_series = forms::singular_series(F, 100000).value;
    double k = static_cast<double>(F.k());
    double logN = std::log(static_cast<double>(N));
    double scale = r.singular_series * std::pow(static_cast<double>(N), 1.0 - 1.0 / p) * std::pow(logN, -k);
    r.ratio = r.norm / scale;
    double ck = 1.0 / (8.0 * k);
    r.lower_bound = std::pow(ck / static_cast<double>(N) * std::pow(static_cast<double>(r.members) / 2.0, p), 1.0 / p);
    return r;
}

}  // namespace envsieve::spectra
