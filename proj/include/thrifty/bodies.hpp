#pragma once

#include "thrifty/numkit.hpp"

#include <cstdint>
#include <string>
#include <vector>

/* Convex bodies as finite point samples. A valid BodySample spans its
 * space and has the origin strictly inside the hull, so support functions
 * are positive and gauges are finite in every direction. */
namespace thrifty {

class BodySample {
public:
    /* Validates: at least dim+1 points, full span, origin strictly interior
     * (hull membership LPs for the +-e_j directions; for symmetric sets the
     * span check alone settles it), and exact closure under negation when
     * `symmetric` is set. Throws ContractViolation otherwise. */
    BodySample(std::string name, std::size_t dim, Matrix points, bool symmetric);

    const std::string& name() const { return name_; }
    std::size_t dim() const { return dim_; }
    std::size_t size() const { return points_.rows(); }
    const Matrix& points() const { return points_; }
    const double* point(std::size_t i) const { return points_.row(i); }
    bool symmetric() const { return symmetric_; }

private:
    std::string name_;
    std::size_t dim_;
    Matrix points_;
    bool symmetric_;
};

/* h_C(y) = max_i <y, p_i>. */
double support(const BodySample& body, const std::vector<double>& y);

/* Minkowski gauge: min {t >= 0 : c in t*C}, the minimum-sum LP over the
 * body's points as columns. Finite for every c because the origin is
 * interior. */
double gauge(const BodySample& body, const std::vector<double>& c);

struct SymmetryCoefficient {
    double mu = 1.0;            // max_i gauge(-p_i), clamped to >= 1
    std::size_t witness = 0;    // point index attaining the max
};

/* Smallest mu >= 1 with -C inside mu*C, computed exactly on the sample via
 * one gauge LP per point. Callers building S_k inflate by (1 + 1e-9). */
SymmetryCoefficient symmetry_mu(const BodySample& body);

enum class BodyKind {
    ball_sample,     // antithetic unit Gaussian directions, n >= 2*dim, n even
    cube,            // all sign vectors, dim <= 20
    cross_polytope,  // +-e_i
    simplex,         // regular, centroid at origin, unit circumradius
    random_symmetric,// Gaussian points with radius jitter, closed under negation
    ellipsoid_sample // seeded invertible map applied to ball_sample
};

BodyKind body_kind_from_name(const std::string& name);
std::string body_kind_name(BodyKind kind);

/* Deterministic generator: same kind/dim/n/seed, same body. `n` is ignored
 * by cube, cross_polytope, and simplex. */
BodySample generate(BodyKind kind, std::size_t dim, std::size_t n, std::uint64_t seed);

/* Body JSON: {"name", "dim", "symmetric", "points"}. Readers reject
 * non-finite entries and ragged rows. */
BodySample parse_body_json(const std::string& text);
std::string body_to_json_string(const BodySample& body);
BodySample load_body(const std::string& path);
void save_body(const BodySample& body, const std::string& path);

} // namespace thrifty
