#pragma once

#include "thrifty/numkit.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace thrifty {

// Witness data for a subset choice. With r the rank of the input span,
// the chosen rows X' of the input X satisfy
//
//   max_i |<y, x_i>|  <=  dilution * max_{j in chosen} |<y, x_j>|
//
// for every functional y, with dilution <= sqrt(ratio_bound(gamma) * r)
// (3 sqrt(r) at the default gamma = 4) and |chosen| <= ceil(gamma * r).
struct SelectionCertificate {
    std::vector<std::size_t> chosen; // ascending indices into the input rows
    std::vector<double> weights;     // spectral certificate weights, aligned with chosen
    std::size_t rank = 0;            // dimension of the span of the input rows
    double dilution = 0.0;           // certified symmetric support ratio bound
    double john_residual = 0.0;      // identity defect of the contact decomposition
    double bss_ratio = 0.0;          // achieved eigenvalue ratio of the reweighted sum
    double john_ms = 0.0;
    double bss_ms = 0.0;
};

// Projects the rows onto an orthonormal basis of their span, takes the
// contact points of the minimum-volume centered ellipsoid there, and thins
// them with sparse_reweighting. Deterministic for fixed input.
SelectionCertificate select_subset(const Matrix& points, double gamma = 4.0);

// Measures max over sampled directions y of
// max_i |<y, x_i>| / max_{j in chosen} |<y, x_j>|. Always >= 1; the
// certificate promises it never exceeds `dilution`.
double empirical_max_ratio(const Matrix& points, const std::vector<std::size_t>& chosen,
                           std::size_t n_dirs, std::uint64_t seed);

} // namespace thrifty
