#include "thrifty/mvee.hpp"

#include "thrifty/errors.hpp"
#include "thrifty/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace thrifty {

namespace {

struct MergedPoints {
    Matrix points;                 // unique rows
    std::vector<std::size_t> rep;  // merged row -> first original row
};

MergedPoints merge_duplicates(const Matrix& points) {
    std::map<std::vector<double>, std::size_t> seen;
    MergedPoints out;
    std::vector<std::size_t> order;
    for (std::size_t r = 0; r < points.rows(); ++r) {
        std::vector<double> row(points.row(r), points.row(r) + points.cols());
        if (seen.emplace(std::move(row), r).second) order.push_back(r);
    }
    out.points = Matrix(order.size(), points.cols());
    out.rep = order;
    for (std::size_t i = 0; i < order.size(); ++i)
        std::copy(points.row(order[i]), points.row(order[i]) + points.cols(),
                  out.points.row(i));
    return out;
}

Matrix weighted_outer_sum(const Matrix& p, const std::vector<double>& u) {
    const std::size_t d = p.cols();
    Matrix x(d, d);
    for (std::size_t i = 0; i < p.rows(); ++i)
        if (u[i] != 0.0) kernels::rank1_update(x.data(), d, u[i], p.row(i));
    return x;
}

Matrix sym_sqrt(const Matrix& m) {
    SpectralSummary es = sym_eigen(m);
    const std::size_t d = m.rows();
    if (es.eigenvalues[0] <= 0.0)
        throw AlgorithmFailure("mvee: shape matrix lost positive definiteness",
                               es.eigenvalues[0]);
    Matrix out(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        const double s = std::sqrt(es.eigenvalues[i]);
        // out += s * b_i b_i^T with b_i the i-th basis column
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t c = 0; c < d; ++c)
                out(r, c) += s * es.basis(r, i) * es.basis(c, i);
    }
    return out;
}

MveeResult mvee_1d(const MergedPoints& merged, std::size_t n_original) {
    double pmax2 = 0.0;
    for (std::size_t i = 0; i < merged.points.rows(); ++i)
        pmax2 = std::max(pmax2, merged.points(i, 0) * merged.points(i, 0));
    if (pmax2 <= 0.0) throw ContractViolation("centered_mvee: points do not span");

    std::vector<std::size_t> arg;
    for (std::size_t i = 0; i < merged.points.rows(); ++i)
        if (merged.points(i, 0) * merged.points(i, 0) >= pmax2 * (1.0 - 1e-12))
            arg.push_back(i);

    MveeResult out;
    out.ellipsoid.m = Matrix(1, 1);
    out.ellipsoid.m(0, 0) = 1.0 / pmax2;
    out.ellipsoid.sqrt_m = Matrix(1, 1);
    out.ellipsoid.sqrt_m(0, 0) = 1.0 / std::sqrt(pmax2);
    out.dual_weights.assign(n_original, 0.0);
    for (std::size_t i : arg) out.dual_weights[merged.rep[i]] = 1.0 / arg.size();
    out.gap = 0.0;
    out.iterations = 0;
    return out;
}

} // namespace

MveeResult centered_mvee(const Matrix& points, const MveeOptions& opts) {
    const std::size_t d = points.cols();
    if (d == 0 || points.rows() == 0)
        throw ContractViolation("centered_mvee: empty input");
    for (std::size_t i = 0, n = points.rows() * points.cols(); i < n; ++i)
        if (!std::isfinite(points.data()[i]))
            throw ContractViolation("centered_mvee: non-finite coordinate");

    MergedPoints merged = merge_duplicates(points);
    if (d == 1) return mvee_1d(merged, points.rows());

    const Matrix& p = merged.points;
    const std::size_t n = p.rows();
    if (n < d) throw ContractViolation("centered_mvee: points do not span");

    const double tol = opts.tol;
    const std::size_t cap =
        opts.max_iter != 0
            ? opts.max_iter
            : static_cast<std::size_t>(100.0 * static_cast<double>(n) *
                                       std::max(1.0, std::log(static_cast<double>(d)))) + 100;

    std::vector<double> u(n, 1.0 / static_cast<double>(n));
    Matrix xinv;
    std::vector<double> w(n);

    const auto refresh = [&] {
        double total = 0.0;
        for (double v : u) total += v;
        kernels::scale(1.0 / total, u.data(), n);
        auto inv = spd_inverse(weighted_outer_sum(p, u));
        if (!inv) throw ContractViolation("centered_mvee: points do not span");
        xinv = std::move(*inv);
        for (std::size_t i = 0; i < n; ++i)
            w[i] = kernels::quad_form(xinv.data(), d, p.row(i));
    };
    refresh();

    const double dd = static_cast<double>(d);
    std::vector<double> g(d), h(n);
    std::size_t iter = 0;
    bool fresh = true;

    for (;; ++iter) {
        if (iter > cap) {
            double worst = 0.0;
            for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, w[i] / dd - 1.0);
            throw ConvergenceError("centered_mvee: iteration cap reached", worst);
        }

        std::size_t jmax = 0, jmin = n;
        for (std::size_t i = 0; i < n; ++i) {
            if (w[i] > w[jmax]) jmax = i;
            if (u[i] > 0.0 && (jmin == n || w[i] < w[jmin])) jmin = i;
        }
        const double eps_plus = w[jmax] / dd - 1.0;
        const double eps_minus = 1.0 - w[jmin] / dd;

        if (eps_plus <= tol && eps_minus <= tol) {
            if (fresh) break;
            refresh();
            fresh = true;
            continue;
        }

        // Wolfe-Atwood step: toward the worst violator, or away from the
        // weakest support point, whichever violation is larger.
        std::size_t j;
        double t;
        bool drop = false;
        if (eps_plus >= eps_minus || u[jmin] >= 1.0 - 1e-12) {
            j = jmax;
            t = (w[j] - dd) / (dd * (w[j] - 1.0));
        } else {
            j = jmin;
            const double t_min = -u[j] / (1.0 - u[j]);
            t = t_min;
            if (w[j] > 1.0) t = std::max((w[j] - dd) / (dd * (w[j] - 1.0)), t_min);
            drop = t == t_min;
        }

        const double omt = 1.0 - t;
        const double c = t / omt;
        const double denom = 1.0 + c * w[j];
        if (!(omt > 0.0) || !(denom > 0.0) || !std::isfinite(c)) {
            refresh();
            fresh = true;
            continue;
        }

        kernels::matvec(xinv.data(), d, d, p.row(j), g.data());
        kernels::matvec(p.data(), n, d, g.data(), h.data());
        kernels::scaled_sq_update(w.data(), h.data(), 1.0 / omt, c / denom, n);
        kernels::rank1_update(xinv.data(), d, -c / denom, g.data());
        kernels::scale(1.0 / omt, xinv.data(), d * d);
        kernels::scale(omt, u.data(), n);
        u[j] = drop ? 0.0 : u[j] + t;
        fresh = false;

        if ((iter & 0xfff) == 0xfff) {
            refresh();
            fresh = true;
        }
    }

    MveeResult out;
    Matrix m = xinv;
    kernels::scale(1.0 / dd, m.data(), d * d);
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c2 = r + 1; c2 < d; ++c2) {
            const double s = 0.5 * (m(r, c2) + m(c2, r));
            m(r, c2) = s;
            m(c2, r) = s;
        }
    out.ellipsoid.sqrt_m = sym_sqrt(m);
    out.ellipsoid.m = std::move(m);

    out.dual_weights.assign(points.rows(), 0.0);
    double total = 0.0;
    for (double v : u) total += v;
    for (std::size_t i = 0; i < n; ++i) out.dual_weights[merged.rep[i]] = u[i] / total;

    double gap = 0.0;
    for (std::size_t i = 0; i < n; ++i) gap = std::max(gap, w[i] / dd - 1.0);
    out.gap = gap;
    out.iterations = iter;
    return out;
}

JohnDecomposition john_decomposition(const Matrix& points, const MveeOptions& opts) {
    MveeResult res = centered_mvee(points, opts);
    const std::size_t d = points.cols();

    double umax = 0.0;
    for (double v : res.dual_weights) umax = std::max(umax, v);
    JohnDecomposition out;
    for (std::size_t i = 0; i < res.dual_weights.size(); ++i)
        if (res.dual_weights[i] > 1e-12 * umax) out.indices.push_back(i);

    const std::size_t m = out.indices.size();
    out.alpha.resize(m);
    out.contact_points = Matrix(m, d);
    for (std::size_t i = 0; i < m; ++i) {
        out.alpha[i] = static_cast<double>(d) * res.dual_weights[out.indices[i]];
        kernels::matvec(res.ellipsoid.sqrt_m.data(), d, d, points.row(out.indices[i]),
                        out.contact_points.row(i));
    }

    // One least-squares projection of alpha onto sum alpha x x^T = I, in the
    // sqrt(2)-scaled symmetric vectorization so Frobenius geometry is kept.
    const std::size_t d2 = d * (d + 1) / 2;
    if (d2 * m <= 50'000'000) {
        Matrix gmat(d2, m);
        std::vector<double> resid(d2, 0.0);
        const double sq2 = std::sqrt(2.0);
        for (std::size_t i = 0; i < m; ++i) {
            const double* x = out.contact_points.row(i);
            std::size_t row = 0;
            for (std::size_t a = 0; a < d; ++a) {
                gmat(row++, i) = x[a] * x[a];
                for (std::size_t b = a + 1; b < d; ++b) gmat(row++, i) = sq2 * x[a] * x[b];
            }
        }
        std::size_t row = 0;
        for (std::size_t a = 0; a < d; ++a) {
            resid[row++] = 1.0;
            for (std::size_t b = a + 1; b < d; ++b) ++row;
        }
        for (std::size_t r = 0; r < d2; ++r)
            resid[r] -= kernels::dot(gmat.row(r), out.alpha.data(), m);
        const std::vector<double> delta = min_norm_least_squares(gmat, resid);
        bool positive = true;
        for (std::size_t i = 0; i < m; ++i)
            if (out.alpha[i] + delta[i] <= 0.0) positive = false;
        if (positive)
            for (std::size_t i = 0; i < m; ++i) out.alpha[i] += delta[i];
    }

    Matrix sum(d, d);
    for (std::size_t i = 0; i < m; ++i)
        kernels::rank1_update(sum.data(), d, out.alpha[i], out.contact_points.row(i));
    out.residual = frobenius_distance(sum, Matrix::identity(d));
    if (out.residual > 1e-6)
        throw ConvergenceError("john_decomposition: identity residual above 1e-6", out.residual);

    out.ellipsoid = std::move(res.ellipsoid);
    return out;
}

} // namespace thrifty
