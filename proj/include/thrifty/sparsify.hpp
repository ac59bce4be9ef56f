#pragma once

#include "thrifty/numkit.hpp"

#include <cstddef>
#include <vector>

namespace thrifty {

// Output of sparse_reweighting: a subset of the input rows with positive
// weights whose weighted outer-product sum has all eigenvalues in
// [1, achieved_ratio].
struct SparseReweighting {
    std::vector<std::size_t> indices; // strictly increasing row indices
    std::vector<double> weights;      // aligned with indices, all positive
    double achieved_ratio = 0.0;      // lambda_max / lambda_min after reweighting
    std::size_t steps = 0;            // barrier steps taken (0 when input already small)
};

// Certified ratio bound for a given oversampling factor gamma:
// (gamma + 1 + 2 sqrt(gamma)) / (gamma + 1 - 2 sqrt(gamma)), e.g. 9 at gamma = 4.
double reweighting_ratio_bound(double gamma);

// Picks at most ceil(gamma * r) rows of `vectors` (m x r, rows v_i spanning
// R^r with sum_i v_i v_i^T within 1e-6 of the identity in Frobenius norm,
// anything worse throws ContractViolation) and weights them so that
//
//   I <= sum_j beta_j v_j v_j^T <= achieved_ratio * I
//
// with achieved_ratio <= reweighting_ratio_bound(gamma) up to rounding.
// Runs the two-sided barrier selection; each step adds the row whose upper
// potential price is furthest below its lower potential budget, so the run
// is deterministic. Inputs with at most ceil(gamma * r) rows are returned
// whole with unit weights before rescaling. Throws ParameterError when
// gamma <= 1 and AlgorithmFailure if no admissible row exists at some step
// or the final ratio misses the bound.
SparseReweighting sparse_reweighting(const Matrix& vectors, double gamma = 4.0);

} // namespace thrifty
