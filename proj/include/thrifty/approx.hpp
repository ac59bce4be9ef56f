#pragma once

#include "thrifty/bodies.hpp"
#include "thrifty/chebyshev.hpp"
#include "thrifty/numkit.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace thrifty {

// A polytope P = conv(vertices) with P inside C inside guaranteed_tau * P,
// where C is the hull of the body's sample points. Every vertex is a sample
// point or a sample point scaled by -1/mu, so the inner containment is by
// construction; the outer factor is certified separately by the verifier,
// which fills achieved_tau.
struct ApproxResult {
    std::string body_name;
    std::size_t dim = 0;
    int k = 0;
    Parity parity = Parity::full;
    double mu = 1.0;             // reflection coefficient used (1 for symmetric bodies)
    double guaranteed_tau = 0.0;
    std::optional<double> achieved_tau;
    std::uint64_t lifted_dim_value = 0;
    std::size_t lifted_rank = 0;
    Matrix vertices;             // rows, reflected copies included, exact duplicates removed
    std::vector<std::size_t> chosen_indices; // sample rows the vertices came from
    double john_residual = 0.0;
    double bss_ratio = 0.0;
    double lift_ms = 0.0;
    double mvee_ms = 0.0;
    double bss_ms = 0.0;
    double assemble_ms = 0.0;
};

struct ApproxOptions {
    double gamma = 4.0;                  // selection oversampling factor
    std::uint64_t lifted_dim_cap = 5000; // resource guard on the lifted dimension
};

// Runs the pipeline at a fixed polynomial degree k: lift the samples, pick a
// small subset in the lifted space, close it under reflection. Symmetric
// bodies use the parity lift matching k; general bodies use the full lift
// and the body's measured reflection coefficient, nudged up by 1e-9 so the
// reflected vertices stay strictly inside the hull. guaranteed_tau is the
// smallest factor the degree certifies for this dimension and coefficient.
// Throws ResourceError when the lifted dimension exceeds the cap.
ApproxResult approximate_with_degree(const BodySample& body, int k,
                                     const ApproxOptions& opts = {});

// Same pipeline with the smallest k whose certified factor is at most tau.
// Throws ParameterError when tau <= 1 or no k up to 64 reaches it.
ApproxResult approximate_to_tau(const BodySample& body, double tau,
                                const ApproxOptions& opts = {});

std::string result_to_json_string(const ApproxResult& result);
ApproxResult parse_result_json(const std::string& text);

} // namespace thrifty
