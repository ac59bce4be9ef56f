#pragma once

#include "thrifty/numkit.hpp"

#include <cstddef>
#include <vector>

/* Minimum-volume origin-centered ellipsoid and the contact-point identity
 * it induces: at the optimum of the determinant-maximization dual there are
 * weights alpha_i > 0 on boundary contacts x_i with sum alpha_i x_i x_i^T = I
 * (in the coordinates where the ellipsoid is the unit ball) and
 * sum alpha_i = d.
 */
namespace thrifty {

struct CenteredEllipsoid {
    Matrix m;       // SPD; the ellipsoid is {x : x^T m x <= 1}
    Matrix sqrt_m;  // symmetric square root of m
};

struct JohnDecomposition {
    CenteredEllipsoid ellipsoid;
    std::vector<std::size_t> indices;  // into the input point list (first
                                       // occurrence for merged duplicates)
    Matrix contact_points;             // rows sqrt_m * p_i, unit to ~1e-6
    std::vector<double> alpha;         // positive, sums to d
    double residual = 0.0;             // ||sum alpha x x^T - I||_F
};

struct MveeResult {
    CenteredEllipsoid ellipsoid;
    std::vector<double> dual_weights; // per input point, >= 0, sums to 1
    double gap = 0.0;                 // max_i w_i / d - 1 at termination
    std::size_t iterations = 0;
};

struct MveeOptions {
    double tol = 1e-8;          // duality-gap target
    std::size_t max_iter = 0;   // 0: 100 * n * max(1, ln d)
};

/* Frank-Wolfe with away/drop steps on the log-det dual. Requires the points
 * to span (ContractViolation otherwise); exact duplicates are merged before
 * solving and their dual weight is reported on the first occurrence.
 * Throws ConvergenceError if the step cap is reached. */
MveeResult centered_mvee(const Matrix& points, const MveeOptions& opts = {});

/* centered_mvee plus contact extraction (u_i > 1e-12 * max u), alpha = d*u,
 * and one least-squares projection of alpha onto sum alpha x x^T = I. */
JohnDecomposition john_decomposition(const Matrix& points, const MveeOptions& opts = {});

} // namespace thrifty
