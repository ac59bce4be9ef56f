#include "thrifty/select.hpp"

#include "thrifty/errors.hpp"
#include "thrifty/kernels.hpp"
#include "thrifty/mvee.hpp"
#include "thrifty/rng.hpp"
#include "thrifty/sparsify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace thrifty {

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

} // namespace

SelectionCertificate select_subset(const Matrix& points, double gamma) {
    const std::size_t n = points.rows();
    const std::size_t dim = points.cols();
    if (n == 0 || dim == 0) throw ContractViolation("select_subset: empty input");

    const SpanBasis span = orthonormal_span(points);
    if (span.rank == 0) throw ContractViolation("select_subset: all rows are zero");
    const std::size_t r = span.rank;

    Matrix basis_t(r, dim);
    for (std::size_t a = 0; a < dim; ++a)
        for (std::size_t b = 0; b < r; ++b) basis_t(b, a) = span.basis(a, b);
    Matrix projected(n, r);
    for (std::size_t i = 0; i < n; ++i)
        kernels::matvec(basis_t.data(), r, dim, points.row(i), projected.row(i));

    SelectionCertificate cert;
    cert.rank = r;

    const auto t0 = std::chrono::steady_clock::now();
    const JohnDecomposition john = john_decomposition(projected);
    cert.john_ms = ms_since(t0);
    cert.john_residual = john.residual;

    const std::size_t m = john.indices.size();
    Matrix scaled(m, r);
    for (std::size_t i = 0; i < m; ++i) {
        const double root = std::sqrt(john.alpha[i]);
        for (std::size_t c = 0; c < r; ++c) scaled(i, c) = root * john.contact_points(i, c);
    }

    const auto t1 = std::chrono::steady_clock::now();
    const SparseReweighting sw = sparse_reweighting(scaled, gamma);
    cert.bss_ms = ms_since(t1);
    cert.bss_ratio = sw.achieved_ratio;

    cert.chosen.reserve(sw.indices.size());
    for (std::size_t k = 0; k < sw.indices.size(); ++k)
        cert.chosen.push_back(john.indices[sw.indices[k]]);
    cert.weights = sw.weights;
    cert.dilution = std::sqrt(reweighting_ratio_bound(gamma) * static_cast<double>(r));
    return cert;
}

double empirical_max_ratio(const Matrix& points, const std::vector<std::size_t>& chosen,
                           std::size_t n_dirs, std::uint64_t seed) {
    const std::size_t n = points.rows();
    const std::size_t dim = points.cols();
    if (chosen.empty()) throw ContractViolation("empirical_max_ratio: empty subset");
    for (std::size_t idx : chosen)
        if (idx >= n) throw ContractViolation("empirical_max_ratio: index out of range");

    Rng rng(seed);
    std::vector<double> y(dim), vals(n);
    double worst = 1.0;
    for (std::size_t t = 0; t < n_dirs; ++t) {
        for (double& c : y) c = rng.normal();
        kernels::matvec(points.data(), n, dim, y.data(), vals.data());
        double num = 0.0;
        for (double v : vals) num = std::max(num, std::abs(v));
        double den = 0.0;
        for (std::size_t idx : chosen) den = std::max(den, std::abs(vals[idx]));
        if (den > 1e-300) worst = std::max(worst, num / den);
    }
    return worst;
}

} // namespace thrifty
