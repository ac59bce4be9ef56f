#pragma once

#include "thrifty/chebyshev.hpp"
#include "thrifty/numkit.hpp"

#include <cstddef>
#include <vector>

/* The tensor lift: phi(x) concatenates, degree by degree, the monomials x^m
 * scaled by sqrt(|m|!/prod m_i!), so that <phi(x), phi(y)> = sum_j <x,y>^j
 * over the enabled degrees. Parity filters keep only even or only odd
 * degrees (even includes the constant), which shrinks the lifted dimension
 * for symmetric bodies.
 */
namespace thrifty {

class LiftedSpace {
public:
    /* Builds the multi-index table in graded lexicographic order (degree
     * ascending; within a degree, first coordinate's exponent descending). */
    LiftedSpace(int d, int k, Parity parity);

    int d() const { return d_; }
    int k() const { return k_; }
    Parity parity() const { return parity_; }
    std::size_t dim() const { return scalings_.size(); }

    const int* index(std::size_t i) const { return indices_.data() + i * static_cast<std::size_t>(d_); }
    int degree(std::size_t i) const { return degrees_[i]; }
    double scaling(std::size_t i) const { return scalings_[i]; }

    /* phi(x); x has d coordinates. Rejects points with
     * k * log(max |x_c|) > 250 so no coordinate can overflow. */
    std::vector<double> lift_point(const double* x) const;

    /* Row i of the result is phi(points.row(i)). */
    Matrix lift_points(const Matrix& points) const;

    /* The functional y with per-degree coefficients alpha (size k+1):
     * coordinate for m is alpha[|m|] * scaling(m) * y^m, so pairing a lifted
     * point gives sum_j alpha_j <x,y>^j over enabled degrees. */
    std::vector<double> lift_functional(const double* y, const std::vector<double>& alpha) const;

private:
    int d_;
    int k_;
    Parity parity_;
    std::vector<int> indices_; // dim x d exponent rows
    std::vector<int> degrees_;
    std::vector<double> scalings_;
};

} // namespace thrifty
