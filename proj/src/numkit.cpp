#include "thrifty/numkit.hpp"

#include "thrifty/errors.hpp"
#include "thrifty/kernels.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

namespace thrifty {

namespace {

using EMatrix = Eigen::MatrixXd;
using ERowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

EMatrix to_eigen(const Matrix& m) {
    return Eigen::Map<const ERowMajor>(m.data(), static_cast<Eigen::Index>(m.rows()),
                                       static_cast<Eigen::Index>(m.cols()));
}

Matrix from_eigen(const EMatrix& e) {
    Matrix m(static_cast<std::size_t>(e.rows()), static_cast<std::size_t>(e.cols()));
    Eigen::Map<ERowMajor>(m.data(), e.rows(), e.cols()) = e;
    return m;
}

} // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_)
        throw ContractViolation("Matrix: data size does not match rows*cols");
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

double frobenius_norm(const Matrix& a) {
    return std::sqrt(kernels::dot(a.data(), a.data(), a.rows() * a.cols()));
}

double frobenius_distance(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw ContractViolation("frobenius_distance: shape mismatch");
    double s = 0.0;
    const double* pa = a.data();
    const double* pb = b.data();
    for (std::size_t i = 0, n = a.rows() * a.cols(); i < n; ++i) {
        const double d = pa[i] - pb[i];
        s += d * d;
    }
    return std::sqrt(s);
}

SpectralSummary sym_eigen(const Matrix& m) {
    if (m.rows() != m.cols()) throw ContractViolation("sym_eigen: matrix not square");
    const std::size_t n = m.rows();
    double amax = 0.0;
    double asym = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            amax = std::max(amax, std::abs(m(i, j)));
            asym = std::max(asym, std::abs(m(i, j) - m(j, i)));
        }
    if (asym > 1e-12 * std::max(1.0, amax))
        throw ContractViolation("sym_eigen: matrix not symmetric");

    EMatrix e = to_eigen(m);
    e = 0.5 * (e + e.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<EMatrix> solver(e);
    if (solver.info() != Eigen::Success)
        throw AlgorithmFailure("sym_eigen: eigensolver did not converge", 0.0);

    SpectralSummary out;
    out.eigenvalues.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
    out.basis = from_eigen(solver.eigenvectors());
    return out;
}

SpanBasis orthonormal_span(const Matrix& points, double rel_tol) {
    SpanBasis out;
    if (points.rows() == 0 || points.cols() == 0) {
        out.basis = Matrix(points.cols(), 0);
        return out;
    }
    EMatrix p = to_eigen(points);
    Eigen::BDCSVD<EMatrix> svd(p, Eigen::ComputeThinV);
    EMatrix v = svd.matrixV();
    Eigen::VectorXd sv = svd.singularValues();
    if (!v.allFinite() || !sv.allFinite()) {
        // the divide-and-conquer SVD in Eigen 3.4.0 emits NaNs on some
        // structured sign matrices; the rotation-based one never does
        Eigen::JacobiSVD<EMatrix> jsvd(p, Eigen::ComputeThinV);
        v = jsvd.matrixV();
        sv = jsvd.singularValues();
    }
    const double smax = sv.size() > 0 ? sv(0) : 0.0;
    std::size_t rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > rel_tol * smax && sv(i) > 0.0) ++rank;
    out.rank = rank;
    out.basis = from_eigen(v.leftCols(static_cast<Eigen::Index>(rank)));
    return out;
}

std::optional<Matrix> spd_inverse(const Matrix& m) {
    if (m.rows() != m.cols()) throw ContractViolation("spd_inverse: matrix not square");
    EMatrix e = to_eigen(m);
    Eigen::LLT<EMatrix> llt(e);
    if (llt.info() != Eigen::Success) return std::nullopt;
    EMatrix inv = llt.solve(EMatrix::Identity(e.rows(), e.cols()));
    return from_eigen(0.5 * (inv + inv.transpose()).eval());
}

std::vector<double> min_norm_least_squares(const Matrix& a, const std::vector<double>& b) {
    if (b.size() != a.rows()) throw ContractViolation("min_norm_least_squares: size mismatch");
    EMatrix e = to_eigen(a);
    Eigen::Map<const Eigen::VectorXd> eb(b.data(), static_cast<Eigen::Index>(b.size()));
    Eigen::VectorXd x = e.completeOrthogonalDecomposition().solve(eb);
    return std::vector<double>(x.data(), x.data() + x.size());
}

/* ---------------------------------------------------------------- simplex */

namespace {

/* Dense two-phase tableau simplex for min sum(w), A w = b, w >= 0.
 * Artificial columns n..n+m-1 give the phase-1 basis. Bland's rule
 * everywhere: entering = smallest eligible column, leaving = smallest basic
 * variable among ratio ties. That rule cannot cycle, so the iteration cap
 * only guards against numeric breakdown. */
class Simplex {
public:
    Simplex(const Matrix& columns, const std::vector<double>& target)
        : m_(columns.rows()), n_(columns.cols()) {
        pivot_tol_ = 1e-11;
        for (std::size_t i = 0; i < m_ * n_; ++i)
            pivot_tol_ = std::max(pivot_tol_, 1e-13 * std::abs(columns.data()[i]));
        bscale_ = 1.0;
        for (double t : target) bscale_ = std::max(bscale_, std::abs(t));

        width_ = n_ + m_ + 1; // columns, artificials, rhs
        tab_.assign(m_ * width_, 0.0);
        basis_.resize(m_);
        for (std::size_t i = 0; i < m_; ++i) {
            const double sign = target[i] < 0.0 ? -1.0 : 1.0;
            double* row = tab_.data() + i * width_;
            for (std::size_t j = 0; j < n_; ++j) row[j] = sign * columns(i, j);
            row[n_ + i] = 1.0;
            row[width_ - 1] = sign * target[i];
            basis_[i] = n_ + i;
        }
    }

    LpResult solve() {
        LpResult out;
        out.weights.assign(n_, 0.0);
        if (m_ == 0) {
            out.status = LpStatus::optimal;
            return out;
        }

        // Phase 1: minimize the artificial mass.
        std::vector<double> rc(n_ + m_, 0.0);
        for (std::size_t j = 0; j < n_ + m_; ++j) {
            double colsum = 0.0;
            for (std::size_t i = 0; i < m_; ++i) colsum += tab_[i * width_ + j];
            rc[j] = (j >= n_ ? 1.0 : 0.0) - colsum;
        }
        run(rc, /*allow_artificial=*/false);

        double art_mass = 0.0;
        for (std::size_t i = 0; i < m_; ++i)
            if (basis_[i] >= n_) art_mass += tab_[i * width_ + width_ - 1];
        if (art_mass > 1e-9 * std::max(1.0, bscale_)) {
            out.status = LpStatus::infeasible;
            return out;
        }
        purge_artificial_rows();

        // Phase 2: minimize the weight sum over the feasible region.
        rc.assign(n_ + m_, 0.0);
        for (std::size_t j = 0; j < n_; ++j) {
            double colsum = 0.0;
            for (std::size_t i = 0; i < m_; ++i) colsum += tab_[i * width_ + j];
            rc[j] = 1.0 - colsum;
        }
        for (std::size_t j = n_; j < n_ + m_; ++j) rc[j] = std::numeric_limits<double>::infinity();
        run(rc, /*allow_artificial=*/false);

        out.status = LpStatus::optimal;
        out.value = 0.0;
        for (std::size_t i = 0; i < m_; ++i) {
            const double v = std::max(0.0, tab_[i * width_ + width_ - 1]);
            out.weights[basis_[i]] = v;
            out.value += v;
        }
        return out;
    }

private:
    void run(std::vector<double>& rc, bool allow_artificial) {
        const std::size_t limit = n_ + (allow_artificial ? m_ : 0);
        const std::size_t cap = 20000 + 200 * (m_ + n_);
        for (std::size_t iter = 0;; ++iter) {
            if (iter > cap) throw AlgorithmFailure("lp_min_sum: simplex iteration cap hit", 0.0);

            std::size_t enter = limit;
            for (std::size_t j = 0; j < limit; ++j)
                if (rc[j] < -1e-9) {
                    enter = j;
                    break;
                }
            if (enter == limit) return; // optimal

            std::size_t leave = m_;
            double best_ratio = 0.0;
            for (std::size_t i = 0; i < m_; ++i) {
                const double a = tab_[i * width_ + enter];
                if (a <= pivot_tol_) continue;
                const double ratio = tab_[i * width_ + width_ - 1] / a;
                if (leave == m_ || ratio < best_ratio * (1.0 - 1e-12) - 1e-15 ||
                    (std::abs(ratio - best_ratio) <=
                         1e-12 * std::max(1.0, std::abs(best_ratio)) + 1e-15 &&
                     basis_[i] < basis_[leave])) {
                    leave = i;
                    best_ratio = ratio;
                }
            }
            if (leave == m_)
                throw AlgorithmFailure("lp_min_sum: unbounded pivot column", 0.0);
            pivot(leave, enter, rc);
        }
    }

    void pivot(std::size_t r, std::size_t e, std::vector<double>& rc) {
        double* prow = tab_.data() + r * width_;
        const double inv = 1.0 / prow[e];
        kernels::scale(inv, prow, width_);
        prow[e] = 1.0;
        for (std::size_t i = 0; i < m_; ++i) {
            if (i == r) continue;
            double* row = tab_.data() + i * width_;
            const double f = row[e];
            if (f != 0.0) {
                kernels::axpy(-f, prow, row, width_);
                row[e] = 0.0;
            }
        }
        const double f = rc[e];
        if (f != 0.0 && std::isfinite(f))
            for (std::size_t j = 0; j < width_ - 1; ++j)
                if (std::isfinite(rc[j])) rc[j] -= f * prow[j];
        rc[e] = 0.0;
        basis_[r] = e;
    }

    /* After phase 1, pivot leftover artificial basics onto real columns, or
     * drop their (redundant) rows entirely. */
    void purge_artificial_rows() {
        for (std::size_t i = 0; i < m_;) {
            if (basis_[i] < n_) {
                ++i;
                continue;
            }
            double* row = tab_.data() + i * width_;
            std::size_t e = n_;
            for (std::size_t j = 0; j < n_; ++j)
                if (std::abs(row[j]) > pivot_tol_ * 100.0) {
                    e = j;
                    break;
                }
            if (e < n_) {
                std::vector<double> dummy(n_ + m_, std::numeric_limits<double>::infinity());
                pivot(i, e, dummy);
                ++i;
            } else {
                // redundant constraint: erase the row
                const std::size_t last = m_ - 1;
                if (i != last) {
                    std::copy(tab_.data() + last * width_, tab_.data() + (last + 1) * width_, row);
                    basis_[i] = basis_[last];
                }
                --m_;
                tab_.resize(m_ * width_);
                basis_.resize(m_);
            }
        }
    }

    std::size_t m_;
    std::size_t n_;
    std::size_t width_;
    double pivot_tol_;
    double bscale_;
    std::vector<double> tab_;
    std::vector<std::size_t> basis_;
};

} // namespace

LpResult lp_min_sum(const Matrix& columns, const std::vector<double>& target) {
    if (target.size() != columns.rows())
        throw ContractViolation("lp_min_sum: target size does not match column height");
    for (double t : target)
        if (!std::isfinite(t)) throw ContractViolation("lp_min_sum: target not finite");

    Simplex simplex(columns, target);
    LpResult out = simplex.solve();
    if (out.status != LpStatus::optimal) return out;

    // Independent feasibility check against the untouched input.
    double bscale = 1.0;
    for (double t : target) bscale = std::max(bscale, std::abs(t));
    for (std::size_t i = 0; i < columns.rows(); ++i) {
        double s = kernels::dot(columns.row(i), out.weights.data(), columns.cols());
        if (std::abs(s - target[i]) > 1e-8 * bscale)
            throw AlgorithmFailure("lp_min_sum: solution fails the equality check",
                                   std::abs(s - target[i]));
    }
    return out;
}

} // namespace thrifty
