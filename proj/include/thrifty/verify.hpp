#pragma once

#include "thrifty/bodies.hpp"
#include "thrifty/numkit.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace thrifty {

// Exact dilation certificate between the sampled body C and a polytope P
// given by vertices: achieved_tau is the smallest t with C inside t * P,
// computed as the largest gauge of a body point with respect to P.
struct Certificate {
    double achieved_tau = 0.0;
    std::size_t witness_index = 0;     // body point attaining the factor
    bool containment_ok = false;       // all vertices have body-gauge <= 1 + 1e-9
    double direction_ratio_max = 0.0;  // filled in from direction_ratios when sampled
};

// One gauge LP per body point, exact up to the LP tolerance (1e-8). Ties on
// the maximum go to the smallest body-point index. Throws CertificationError
// when some body point lies outside the cone of the vertices (in particular
// whenever the origin is not interior to the hull of P within the body span).
Certificate achieved_factor(const BodySample& body, const Matrix& vertices);

// Support-function view of the same factor from sampled directions.
struct DirectionRatios {
    double max_ratio = 1.0;
    double min_ratio = 1.0;
    std::vector<std::size_t> histogram; // 16 equal-width bins over [min, max]
    std::size_t n_dirs = 0;
    std::uint64_t seed = 0;
};

// Ratios support(C, y) / support(P, y) over n_dirs seeded Gaussian
// directions. Every sampled ratio is a lower bound on achieved_tau.
DirectionRatios direction_ratios(const BodySample& body, const Matrix& vertices,
                                 std::size_t n_dirs, std::uint64_t seed);

// Greedy comparison baseline: grows a subset of body points (symmetric
// closure for symmetric bodies) until its hull approximates C within tau,
// always adding the current worst witness. The seed only picks the starting
// direction. Returns the selected vertices; terminates because the full
// sample achieves factor 1.
Matrix baseline_net(const BodySample& body, double tau, std::uint64_t seed);

std::string certificate_to_json_string(const Certificate& cert, const DirectionRatios& dirs);

} // namespace thrifty
