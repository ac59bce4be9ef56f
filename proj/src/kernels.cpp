#include "thrifty/kernels.hpp"

#include "thrifty/errors.hpp"

#include <cstdlib>
#include <cstring>

namespace thrifty::kernels {

namespace {

struct Table {
    Backend backend;
    double (*dot)(const double*, const double*, std::size_t);
    void (*axpy)(double, const double*, double*, std::size_t);
    void (*scale)(double, double*, std::size_t);
    void (*matvec)(const double*, std::size_t, std::size_t, const double*, double*);
    void (*rank1_update)(double*, std::size_t, double, const double*);
    double (*quad_form)(const double*, std::size_t, const double*);
    void (*scaled_sq_update)(double*, const double*, double, double, std::size_t);
};

constexpr Table kScalar = {
    Backend::scalar,       scalar::dot,       scalar::axpy,
    scalar::scale,         scalar::matvec,    scalar::rank1_update,
    scalar::quad_form,     scalar::scaled_sq_update,
};

#if defined(__x86_64__) || defined(_M_X64)
constexpr Table kAvx2 = {
    Backend::avx2,         avx2::dot,         avx2::axpy,
    avx2::scale,           avx2::matvec,      avx2::rank1_update,
    avx2::quad_form,       avx2::scaled_sq_update,
};
#endif

Table pick_default() {
    const char* env = std::getenv("THRIFTY_KERNELS");
    if (env != nullptr && *env != '\0') {
        if (std::strcmp(env, "scalar") == 0) return kScalar;
        if (std::strcmp(env, "avx2") == 0) {
#if defined(__x86_64__) || defined(_M_X64)
            if (!avx2_supported())
                throw ParameterError("THRIFTY_KERNELS=avx2: cpu lacks avx2/fma");
            return kAvx2;
#else
            throw ParameterError("THRIFTY_KERNELS=avx2: not an x86-64 build");
#endif
        }
        throw ParameterError(std::string("THRIFTY_KERNELS: unknown backend '") + env + "'");
    }
#if defined(__x86_64__) || defined(_M_X64)
    if (avx2_supported()) return kAvx2;
#endif
    return kScalar;
}

Table& table() {
    static Table t = pick_default();
    return t;
}

} // namespace

bool avx2_supported() {
#if defined(__x86_64__) || defined(_M_X64)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Backend active_backend() { return table().backend; }

void force_backend(Backend b) {
    if (b == Backend::scalar) {
        table() = kScalar;
        return;
    }
#if defined(__x86_64__) || defined(_M_X64)
    if (!avx2_supported()) throw ParameterError("force_backend: cpu lacks avx2/fma");
    table() = kAvx2;
#else
    throw ParameterError("force_backend: not an x86-64 build");
#endif
}

double dot(const double* a, const double* b, std::size_t n) { return table().dot(a, b, n); }

void axpy(double a, const double* x, double* y, std::size_t n) { table().axpy(a, x, y, n); }

void scale(double a, double* x, std::size_t n) { table().scale(a, x, n); }

void matvec(const double* a, std::size_t rows, std::size_t cols, const double* x, double* y) {
    table().matvec(a, rows, cols, x, y);
}

void rank1_update(double* a, std::size_t n, double alpha, const double* v) {
    table().rank1_update(a, n, alpha, v);
}

double quad_form(const double* a, std::size_t n, const double* x) {
    return table().quad_form(a, n, x);
}

void scaled_sq_update(double* w, const double* h, double s, double b, std::size_t n) {
    table().scaled_sq_update(w, h, s, b, n);
}

} // namespace thrifty::kernels
