#pragma once

#include <cstddef>
#include <optional>
#include <vector>

/* Small dense numeric layer: a row-major matrix type, symmetric
 * eigendecomposition, span extraction, and the minimum-sum LP that backs
 * every gauge computation. Factorizations are delegated to Eigen inside the
 * implementation; the LP is a two-phase tableau simplex with Bland's rule.
 */
namespace thrifty {

/* Row-major dense matrix. Rows are points when the matrix stores a point
 * set. Contiguous rows keep the kernels simple. */
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}
    Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    double* row(std::size_t r) { return data_.data() + r * cols_; }
    const double* row(std::size_t r) const { return data_.data() + r * cols_; }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }

    static Matrix identity(std::size_t n);

    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/* ||a - b||_F; shapes must match. */
double frobenius_distance(const Matrix& a, const Matrix& b);
double frobenius_norm(const Matrix& a);

struct SpectralSummary {
    std::vector<double> eigenvalues; // ascending
    Matrix basis;                    // orthonormal columns, basis.col(i) <-> eigenvalues[i]
};

/* Eigendecomposition of a symmetric matrix. Throws ContractViolation if m is
 * not square or not symmetric to ~1e-12 relative. */
SpectralSummary sym_eigen(const Matrix& m);

struct SpanBasis {
    std::size_t rank = 0;
    Matrix basis; // d x rank, orthonormal columns spanning the points
};

/* Orthonormal basis of span{points} (points are rows of an n x d matrix).
 * Singular values below rel_tol * sigma_max are treated as zero. */
SpanBasis orthonormal_span(const Matrix& points, double rel_tol = 1e-10);

enum class LpStatus { optimal, infeasible };

struct LpResult {
    LpStatus status = LpStatus::infeasible;
    double value = 0.0;          // sum of weights at the optimum
    std::vector<double> weights; // size n, all >= 0
};

/* min sum(w) s.t. columns * w = target, w >= 0.
 *
 * `columns` is m x n with one column per candidate; infeasibility is a
 * normal result, numeric breakdown throws AlgorithmFailure. Bland's rule
 * (smallest-index entering and leaving) keeps the pivot order deterministic
 * and cycle-free. */
LpResult lp_min_sum(const Matrix& columns, const std::vector<double>& target);

/* Inverse of a symmetric positive definite matrix via Cholesky; nullopt if
 * the factorization fails (matrix not PD to machine precision). */
std::optional<Matrix> spd_inverse(const Matrix& m);

/* Minimum-norm least-squares solution of A x = b. */
std::vector<double> min_norm_least_squares(const Matrix& a, const std::vector<double>& b);

} // namespace thrifty
