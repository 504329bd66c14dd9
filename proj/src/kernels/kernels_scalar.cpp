#include <cmath>

#include "envsieve/kernels.hpp"

namespace envsieve::kernels::scalar {

double dot3(const double* a, const double* b, const double* c, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i] * c[i];
    return s;
}

double sum_abs2(const cplx* z, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += std::norm(z[i]);
    return s;
}

double weighted_sum_abs2(const double* w, const cplx* z, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += w[i] * std::norm(z[i]);
    return s;
}

double sum_abs_pow(const cplx* z, std::size_t n, double p) {
    double s = 0.0;
    double half = 0.5 * p;
    for (std::size_t i = 0; i < n; ++i) s += std::pow(std::norm(z[i]), half);
    return s;
}

void square_scale(const double* x, double s, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = s * (x[i] * x[i]);
}

double sum_abs_diff_squares(const double* x, const double* y, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += std::fabs(x[i] * x[i] - y[i] * y[i]);
    return s;
}

}  // namespace envsieve::kernels::scalar
