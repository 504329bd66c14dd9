#pragma once

#include <complex>
#include <span>
#include <vector>

namespace envsieve::fft {

using cplx = std::complex<double>;

// X[k] = sum_n x[n] e^{-2 pi i kn/N}, unnormalized.
std::vector<cplx> forward(std::span<const cplx> x);
// X[k] = sum_n x[n] e^{+2 pi i kn/N}, unnormalized.
std::vector<cplx> backward(std::span<const cplx> x);
// Real input, sign -1; returns the n/2+1 non-redundant outputs.
std::vector<cplx> forward_real(std::span<const double> x);

}  // namespace envsieve::fft
