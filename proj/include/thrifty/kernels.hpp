#pragma once

#include <cstddef>

/* Dense double-precision inner loops shared by the solvers.
 *
 * Every kernel has a scalar reference implementation and, on x86-64, an
 * AVX2+FMA variant. The top-level functions dispatch once at startup based
 * on cpuid; tests compare the variants directly. The two variants agree up
 * to floating-point reassociation, not bitwise.
 */
namespace thrifty::kernels {

enum class Backend { scalar, avx2 };

/* Backend picked at startup: avx2 when the CPU supports it, else scalar.
 * THRIFTY_KERNELS=scalar|avx2|auto overrides the choice before first use. */
Backend active_backend();

/* Test hook. Throws ParameterError if the backend is not available. */
void force_backend(Backend b);

bool avx2_supported();

double dot(const double* a, const double* b, std::size_t n);

/* y += a * x */
void axpy(double a, const double* x, double* y, std::size_t n);

/* x *= a */
void scale(double a, double* x, std::size_t n);

/* y = A x for row-major A (rows x cols). */
void matvec(const double* a, std::size_t rows, std::size_t cols, const double* x, double* y);

/* A += alpha * v v^T for row-major square A. */
void rank1_update(double* a, std::size_t n, double alpha, const double* v);

/* x^T A x for row-major square A. */
double quad_form(const double* a, std::size_t n, const double* x);

/* w_i = s * (w_i - b * h_i^2); the MVEE weight refresh. */
void scaled_sq_update(double* w, const double* h, double s, double b, std::size_t n);

namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
void scale(double a, double* x, std::size_t n);
void matvec(const double* a, std::size_t rows, std::size_t cols, const double* x, double* y);
void rank1_update(double* a, std::size_t n, double alpha, const double* v);
double quad_form(const double* a, std::size_t n, const double* x);
void scaled_sq_update(double* w, const double* h, double s, double b, std::size_t n);
} // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
/* Only call these when avx2_supported() is true. */
namespace avx2 {
double dot(const double* a, const double* b, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
void scale(double a, double* x, std::size_t n);
void matvec(const double* a, std::size_t rows, std::size_t cols, const double* x, double* y);
void rank1_update(double* a, std::size_t n, double alpha, const double* v);
double quad_form(const double* a, std::size_t n, const double* x);
void scaled_sq_update(double* w, const double* h, double s, double b, std::size_t n);
} // namespace avx2
#endif

} // namespace thrifty::kernels
