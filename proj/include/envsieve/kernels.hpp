#pragma once

// Hot inner loops with a scalar reference and an AVX2 variant. The active
// variant is chosen once from CPUID; set_isa() overrides it for testing.

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>

namespace envsieve::kernels {

enum class Isa { scalar, avx2 };

bool avx2_compiled();
bool avx2_supported();  // compiled in and the CPU reports AVX2+FMA
Isa active_isa();
void set_isa(Isa isa);  // throws HypothesisError if the variant is unavailable
std::string_view isa_name(Isa isa);
std::optional<Isa> parse_isa(std::string_view name);

using cplx = std::complex<double>;

// sum_i a[i] * b[i] * c[i]
double dot3(std::span<const double> a, std::span<const double> b, std::span<const double> c);
// sum_i |z[i]|^2
double sum_abs2(std::span<const cplx> z);
// sum_i w[i] * |z[i]|^2
double weighted_sum_abs2(std::span<const double> w, std::span<const cplx> z);
// sum_i |z[i]|^p; vectorized when p is an even integer
double sum_abs_pow(std::span<const cplx> z, double p);
// out[i] = s * x[i]^2
void square_scale(std::span<const double> x, double s, std::span<double> out);
// sum_i |x[i]^2 - y[i]^2|
double sum_abs_diff_squares(std::span<const double> x, std::span<const double> y);

namespace scalar {
double dot3(const double* a, const double* b, const double* c, std::size_t n);
double sum_abs2(const cplx* z, std::size_t n);
double weighted_sum_abs2(const double* w, const cplx* z, std::size_t n);
double sum_abs_pow(const cplx* z, std::size_t n, double p);
void square_scale(const double* x, double s, double* out, std::size_t n);
double sum_abs_diff_squares(const double* x, const double* y, std::size_t n);
}  // namespace scalar

namespace avx2 {
double dot3(const double* a, const double* b, const double* c, std::size_t n);
double sum_abs2(const cplx* z, std::size_t n);
double weighted_sum_abs2(const double* w, const cplx* z, std::size_t n);
double sum_abs_pow(const cplx* z, std::size_t n, double p);
void square_scale(const double* x, double s, double* out, std::size_t n);
double sum_abs_diff_squares(const double* x, const double* y, std::size_t n);
}  // namespace avx2

}  // namespace envsieve::kernels
