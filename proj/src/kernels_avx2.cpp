#if defined(__x86_64__) || defined(_M_X64)

#include "thrifty/kernels.hpp"

#include <immintrin.h>

/* This translation unit is compiled with -mavx2 -mfma; callers must gate on
 * avx2_supported(). Loads are unaligned, tails run scalar. */
namespace thrifty::kernels::avx2 {

static inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d swapped = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, swapped));
}

double dot(const double* a, const double* b, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
    }
    if (i + 4 <= n) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
        i += 4;
    }
    double s = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

void axpy(double a, const double* x, double* y, std::size_t n) {
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vy = _mm256_loadu_pd(y + i);
        vy = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), vy);
        _mm256_storeu_pd(y + i, vy);
    }
    for (; i < n; ++i) y[i] += a * x[i];
}

void scale(double a, double* x, std::size_t n) {
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(x + i, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
    for (; i < n; ++i) x[i] *= a;
}

void matvec(const double* a, std::size_t rows, std::size_t cols, const double* x, double* y) {
    for (std::size_t r = 0; r < rows; ++r) y[r] = dot(a + r * cols, x, cols);
}

void rank1_update(double* a, std::size_t n, double alpha, const double* v) {
    for (std::size_t r = 0; r < n; ++r) axpy(alpha * v[r], v, a + r * n, n);
}

double quad_form(const double* a, std::size_t n, const double* x) {
    double s = 0.0;
    for (std::size_t r = 0; r < n; ++r) s += x[r] * dot(a + r * n, x, n);
    return s;
}

void scaled_sq_update(double* w, const double* h, double s, double b, std::size_t n) {
    const __m256d vs = _mm256_set1_pd(s);
    const __m256d vb = _mm256_set1_pd(b);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vh = _mm256_loadu_pd(h + i);
        __m256d vw = _mm256_loadu_pd(w + i);
        vw = _mm256_fnmadd_pd(vb, _mm256_mul_pd(vh, vh), vw);
        _mm256_storeu_pd(w + i, _mm256_mul_pd(vs, vw));
    }
    for (; i < n; ++i) w[i] = s * (w[i] - b * h[i] * h[i]);
}

} // namespace thrifty::kernels::avx2

#endif
