#include "thrifty/sparsify.hpp"

#include "thrifty/errors.hpp"
#include "thrifty/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace thrifty {

namespace {

Matrix outer_sum(const Matrix& v, const std::vector<double>& beta) {
    const std::size_t r = v.cols();
    Matrix m(r, r);
    for (std::size_t i = 0; i < v.rows(); ++i)
        if (beta[i] != 0.0) kernels::rank1_update(m.data(), r, beta[i], v.row(i));
    return m;
}

double trace(const Matrix& m) {
    double t = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
    return t;
}

// (cI - A) when sign = +1, (A - cI) when sign = -1.
Matrix shifted(const Matrix& a, double c, double sign) {
    Matrix m = a;
    kernels::scale(-sign, m.data(), m.rows() * m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) m(i, i) += sign * c;
    return m;
}

struct Certified {
    double lo = 0.0;
    double hi = 0.0;
};

Certified spectral_range(const Matrix& v, const std::vector<double>& beta) {
    SpectralSummary es = sym_eigen(outer_sum(v, beta));
    return {es.eigenvalues.front(), es.eigenvalues.back()};
}

} // namespace

double reweighting_ratio_bound(double gamma) {
    if (!(gamma > 1.0)) throw ParameterError("reweighting_ratio_bound: gamma must exceed 1");
    const double sq = std::sqrt(gamma);
    return (gamma + 1.0 + 2.0 * sq) / (gamma + 1.0 - 2.0 * sq);
}

SparseReweighting sparse_reweighting(const Matrix& vectors, double gamma) {
    const std::size_t m = vectors.rows();
    const std::size_t r = vectors.cols();
    if (m == 0 || r == 0) throw ContractViolation("sparse_reweighting: empty input");
    if (!(gamma > 1.0 + 1e-9)) throw ParameterError("sparse_reweighting: gamma must exceed 1");
    for (std::size_t i = 0; i < m * r; ++i)
        if (!std::isfinite(vectors.data()[i]))
            throw ContractViolation("sparse_reweighting: non-finite coordinate");

    const Matrix s = outer_sum(vectors, std::vector<double>(m, 1.0));
    if (frobenius_distance(s, Matrix::identity(r)) > 1e-6)
        throw ContractViolation("sparse_reweighting: input is not isotropic");

    const double bound = reweighting_ratio_bound(gamma);
    const std::size_t t_steps = static_cast<std::size_t>(std::ceil(gamma * static_cast<double>(r)));

    std::map<std::size_t, double> picks;
    std::size_t steps = 0;

    if (m <= t_steps) {
        for (std::size_t i = 0; i < m; ++i) picks[i] = 1.0;
    } else {
        // Whiten exactly so the isotropy the potential argument needs holds to
        // machine precision; the chosen weights transfer to the raw rows.
        SpectralSummary es = sym_eigen(s);
        if (es.eigenvalues.front() <= 0.0)
            throw ContractViolation("sparse_reweighting: rows do not span");
        Matrix white(r, r);
        for (std::size_t i = 0; i < r; ++i) {
            const double inv_sq = 1.0 / std::sqrt(es.eigenvalues[i]);
            for (std::size_t a = 0; a < r; ++a)
                for (std::size_t b = 0; b < r; ++b)
                    white(a, b) += inv_sq * es.basis(a, i) * es.basis(b, i);
        }
        Matrix vw(m, r);
        for (std::size_t i = 0; i < m; ++i)
            kernels::matvec(white.data(), r, r, vectors.row(i), vw.row(i));

        const double sq = std::sqrt(gamma);
        const double delta_l = 1.0;
        const double delta_u = (sq + 1.0) / (sq - 1.0);
        double lo = -static_cast<double>(r) * sq;
        double up = static_cast<double>(r) * sq * (sq + 1.0) / (sq - 1.0);
        double phi_l = static_cast<double>(r) / -lo;
        double phi_u = static_cast<double>(r) / up;

        Matrix a(r, r);
        std::vector<double> yu(r), yl(r);

        for (; steps < t_steps; ++steps) {
            const double up2 = up + delta_u;
            const double lo2 = lo + delta_l;
            auto bu = spd_inverse(shifted(a, up2, +1.0));
            auto bl = spd_inverse(shifted(a, lo2, -1.0));
            if (!bu || !bl)
                throw AlgorithmFailure("sparse_reweighting: barrier crossed", static_cast<double>(steps));
            const double phi_u2 = trace(*bu);
            const double phi_l2 = trace(*bl);
            const double du = phi_u - phi_u2;
            const double dl = phi_l2 - phi_l;
            if (!(du > 0.0) || !(dl > 0.0))
                throw AlgorithmFailure("sparse_reweighting: potential did not move", du);

            std::size_t best = m;
            double best_score = -std::numeric_limits<double>::infinity();
            double best_ub = 0.0, best_lb = 0.0, best_quu = 0.0, best_qu = 0.0;
            double best_qll = 0.0, best_ql = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                kernels::matvec(bu->data(), r, r, vw.row(i), yu.data());
                const double quu = kernels::dot(yu.data(), yu.data(), r);
                const double qu = kernels::dot(vw.row(i), yu.data(), r);
                kernels::matvec(bl->data(), r, r, vw.row(i), yl.data());
                const double qll = kernels::dot(yl.data(), yl.data(), r);
                const double ql = kernels::dot(vw.row(i), yl.data(), r);
                const double ub = quu / du + qu;
                const double lb = qll / dl - ql;
                if (lb - ub > best_score) {
                    best_score = lb - ub;
                    best = i;
                    best_ub = ub;
                    best_lb = lb;
                    best_quu = quu;
                    best_qu = qu;
                    best_qll = qll;
                    best_ql = ql;
                }
            }
            const double scale = std::abs(best_ub) + std::abs(best_lb) + 1.0;
            if (best == m || best_score < -1e-12 * scale)
                throw AlgorithmFailure("sparse_reweighting: no admissible row", best_score);

            const double w = 2.0 / (best_ub + best_lb);
            if (!(w > 0.0) || !std::isfinite(w))
                throw AlgorithmFailure("sparse_reweighting: degenerate step weight", w);

            kernels::rank1_update(a.data(), r, w, vw.row(best));
            picks[best] += w;

            // Rank-one update of both potentials; re-derived from scratch
            // periodically to stop drift.
            phi_u = phi_u2 + w * best_quu / (1.0 - w * best_qu);
            phi_l = phi_l2 - w * best_qll / (1.0 + w * best_ql);
            up = up2;
            lo = lo2;
            if ((steps & 0x7f) == 0x7f) {
                auto fu = spd_inverse(shifted(a, up, +1.0));
                auto fl = spd_inverse(shifted(a, lo, -1.0));
                if (!fu || !fl)
                    throw AlgorithmFailure("sparse_reweighting: barrier crossed",
                                           static_cast<double>(steps));
                phi_u = trace(*fu);
                phi_l = trace(*fl);
            }
        }
    }

    SparseReweighting out;
    std::vector<double> beta(m, 0.0);
    for (const auto& [idx, w] : picks) {
        out.indices.push_back(idx);
        out.weights.push_back(w);
        beta[idx] = w;
    }

    const Certified range = spectral_range(vectors, beta);
    if (!(range.lo > 0.0))
        throw AlgorithmFailure("sparse_reweighting: reweighted sum not positive definite", range.lo);
    out.achieved_ratio = range.hi / range.lo;
    if (out.achieved_ratio > bound + 1e-4)
        throw AlgorithmFailure("sparse_reweighting: ratio bound missed", out.achieved_ratio);
    for (double& w : out.weights) w /= range.lo;
    out.steps = steps;
    return out;
}

} // namespace thrifty
