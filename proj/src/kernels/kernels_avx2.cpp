#include <immintrin.h>

#include <cmath>

#include "envsieve/kernels.hpp"

namespace envsieve::kernels::avx2 {

namespace {

double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d sh = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

// Squared moduli of four complex values packed as (|z0|^2, |z2|^2, |z1|^2, |z3|^2).
__m256d norms4(const double* p) {
    __m256d a = _mm256_loadu_pd(p);
    __m256d b = _mm256_loadu_pd(p + 4);
    return _mm256_hadd_pd(_mm256_mul_pd(a, a), _mm256_mul_pd(b, b));
}

}  // namespace

double dot3(const double* a, const double* b, const double* c, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256d ab0 = _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        __m256d ab1 = _mm256_mul_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4));
        acc0 = _mm256_fmadd_pd(ab0, _mm256_loadu_pd(c + i), acc0);
        acc1 = _mm256_fmadd_pd(ab1, _mm256_loadu_pd(c + i + 4), acc1);
    }
    double s = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) s += a[i] * b[i] * c[i];
    return s;
}

double sum_abs2(const cplx* z, std::size_t n) {
    const double* p = reinterpret_cast<const double*>(z);
    std::size_t m = 2 * n;
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= m; i += 8) {
        __m256d x0 = _mm256_loadu_pd(p + i);
        __m256d x1 = _mm256_loadu_pd(p + i + 4);
        acc0 = _mm256_fmadd_pd(x0, x0, acc0);
        acc1 = _mm256_fmadd_pd(x1, x1, acc1);
    }
    double s = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < m; ++i) s += p[i] * p[i];
    return s;
}

double weighted_sum_abs2(const double* w, const cplx* z, std::size_t n) {
    const double* p = reinterpret_cast<const double*>(z);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d nz = norms4(p + 2 * i);
        // norms4 interleaves lanes as (0, 2, 1, 3); permute the weights to match.
        __m256d wv = _mm256_permute4x64_pd(_mm256_loadu_pd(w + i), 0b11011000);
        acc = _mm256_fmadd_pd(wv, nz, acc);
    }
    double s = hsum(acc);
    for (; i < n; ++i) s += w[i] * std::norm(z[i]);
    return s;
}

double sum_abs_pow(const cplx* z, std::size_t n, double p) {
    double half = 0.5 * p;
    if (half != std::floor(half) || half < 1.0 || half > 16.0) return scalar::sum_abs_pow(z, n, p);
    int m = static_cast<int>(half);
    const double* d = reinterpret_cast<const double*>(z);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d nz = norms4(d + 2 * i);
        __m256d pw = nz;
        for (int k = 1; k < m; ++k) pw = _mm256_mul_pd(pw, nz);
        acc = _mm256_add_pd(acc, pw);
    }
    double s = hsum(acc);
    for (; i < n; ++i) {
        double nz = std::norm(z[i]);
        double pw = nz;
        for (int k = 1; k < m; ++k) pw *= nz;
        s += pw;
    }
    return s;
}

void square_scale(const double* x, double s, double* out, std::size_t n) {
    __m256d sv = _mm256_set1_pd(s);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d v = _mm256_loadu_pd(x + i);
        _mm256_storeu_pd(out + i, _mm256_mul_pd(sv, _mm256_mul_pd(v, v)));
    }
    for (; i < n; ++i) out[i] = s * (x[i] * x[i]);
}

double sum_abs_diff_squares(const double* x, const double* y, std::size_t n) {
    const __m256d sign = _mm256_set1_pd(-0.0);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d a = _mm256_loadu_pd(x + i);
        __m256d b = _mm256_loadu_pd(y + i);
        __m256d d = _mm256_sub_pd(_mm256_mul_pd(a, a), _mm256_mul_pd(b, b));
        acc = _mm256_add_pd(acc, _mm256_andnot_pd(sign, d));
    }
    double s = hsum(acc);
    for (; i < n; ++i) s += std::fabs(x[i] * x[i] - y[i] * y[i]);
    return s;
}

}  // namespace envsieve::kernels::avx2
