#include <algorithm>
#include <cmath>
#include <numbers>

#include "envsieve/errors.hpp"
#include "envsieve/fft.hpp"
#include "envsieve/parallel.hpp"
#include "envsieve/transfer.hpp"

namespace envsieve::transfer {

CyclicFunction::CyclicFunction(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) throw ContractError("cyclic function needs N >= 1");
    nonnegative_ = true;
    for (double v : values_) {
        if (!std::isfinite(v)) throw ContractError("cyclic function values must be finite");
        if (v < 0) nonnegative_ = false;
    }
}

double CyclicFunction::mean() const {
    return pairwise_sum(values_.data(), values_.size()) / static_cast<double>(values_.size());
}

std::vector<cplx> dft(std::span<const double> f) {
    std::vector<cplx> x(f.begin(), f.end());
    auto X = fft::backward(x);
    double inv = 1.0 / static_cast<double>(f.size());
    for (auto& z : X) z *= inv;
    return X;
}

std::vector<cplx> dft(const CyclicFunction& f) { return dft(f.values()); }

std::vector<cplx> inverse_dft(std::span<const cplx> fhat) { return fft::forward(fhat); }

double trilinear_fourier(std::span<const cplx> fhat, std::span<const cplx> ghat, std::span<const cplx> khat) {
    std::uint64_t N = fhat.size();
    if (ghat.size() != N || khat.size() != N) throw ContractError("transforms must share N");
    if (N % 2 == 0) throw HypothesisError("3-AP counts need N odd");
    cplx s(0, 0);
    for (std::uint64_t c = 0; c < N; ++c) {
        std::uint64_t m = (N - (2 * c) % N) % N;
        s += fhat[c] * ghat[m] * khat[c];
    }
    return s.real();
}

double three_ap_count(const CyclicFunction& f) {
    if (f.N() % 2 == 0) throw HypothesisError("3-AP counts need N odd");
    auto fh = dft(f);
    return trilinear_fourier(fh, fh, fh);
}

double three_ap_brute(const CyclicFunction& f) {
    std::uint64_t N = f.N();
    auto v = f.values();
    std::vector<double> rows(N);
    parallel_for(N, [&](std::size_t n) {
        double s = 0;
        for (std::uint64_t d = 0; d < N; ++d) s += v[(n + d) % N] * v[(n + 2 * d) % N];
        rows[n] = v[n] * s;
    });
    double dN = static_cast<double>(N);
    return pairwise_sum(rows.data(), rows.size()) / (dN * dN);
}

std::vector<std::uint64_t> large_spectrum(std::span<const cplx> fhat, double eps) {
    if (!(eps > 0)) throw DomainError("large_spectrum needs eps > 0");
    std::vector<std::uint64_t> out;
    for (std::uint64_t a = 0; a < fhat.size(); ++a)
        if (std::abs(fhat[a]) >= eps) out.push_back(a);
    return out;
}

BohrSet bohr_set(std::span<const std::uint64_t> freqs, double eps, std::uint64_t N) {
    if (!(eps > 0 && eps < 2)) throw DomainError("Bohr radius must lie in (0, 2)");
    if (N == 0) throw DomainError("N must be positive");
    BohrSet B{N, std::vector<std::uint64_t>(freqs.begin(), freqs.end()), eps, {}};
    for (std::uint64_t m = 0; m < N; ++m) {
        bool in = true;
        for (auto a : freqs) {
            // |1 - e_N(x)| = 2 |sin(pi x / N)|, folded so m and -m see the same value.
            std::uint64_t r = static_cast<std::uint64_t>((static_cast<unsigned __int128>(a % N) * m) % N);
            r = std::min(r, N - r);
            if (2.0 * std::sin(std::numbers::pi * static_cast<double>(r) / static_cast<double>(N)) > eps) {
                in = false;
                break;
            }
        }
        if (in) B.members.push_back(m);
    }
    return B;
}

std::vector<double> bohr_multiplier(const BohrSet& B) {
    if (B.members.empty()) throw ContractError("Bohr set is empty");
    std::vector<cplx> ind(B.N, cplx(0, 0));
    for (auto m : B.members) ind[m] = cplx(1, 0);
    // sum_m 1_B(m) e_N(-am) is the unnormalized forward transform.
    auto S = fft::forward(ind);
    double inv = 1.0 / static_cast<double>(B.members.size());
    std::vector<double> out(B.N);
    for (std::uint64_t a = 0; a < B.N; ++a) out[a] = std::norm(S[a] * inv);
    return out;
}

std::pair<CyclicFunction, CyclicFunction> decompose(const CyclicFunction& f, const BohrSet& B) {
    if (B.N != f.N()) throw ContractError("Bohr set and f must share N");
    auto mult = bohr_multiplier(B);
    auto fh = dft(f);
    for (std::uint64_t a = 0; a < fh.size(); ++a) fh[a] *= mult[a];
    auto back = inverse_dft(fh);
    std::vector<double> f1(f.N()), f2(f.N());
    for (std::uint64_t n = 0; n < f.N(); ++n) {
        f1[n] = back[n].real();
        f2[n] = f.values()[n] - f1[n];
    }
    return {CyclicFunction(std::move(f1)), CyclicFunction(std::move(f2))};
}

double varnavides_count(const CyclicFunction& f, double delta) {
    for (double v : f.values())
        if (v < 0 || v > 1) throw HypothesisError("varnavides_count needs 0 <= f <= 1");
    if (f.mean() < delta) throw HypothesisError("E f is below delta");
    return three_ap_count(f);
}

}  // namespace envsieve::transfer
