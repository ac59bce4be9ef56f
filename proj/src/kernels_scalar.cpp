#include "thrifty/kernels.hpp"

namespace thrifty::kernels::scalar {

double dot(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

void axpy(double a, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void scale(double a, double* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) x[i] *= a;
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
    for (std::size_t i = 0; i < n; ++i) w[i] = s * (w[i] - b * h[i] * h[i]);
}

} // namespace thrifty::kernels::scalar
