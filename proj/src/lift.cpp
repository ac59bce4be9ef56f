#include "thrifty/lift.hpp"

#include "thrifty/errors.hpp"

#include <cmath>

namespace thrifty {

namespace {

/* Exact through 18!, then correctly rounded; the sqrt below keeps the
 * relative error far under the 1e-9 test tolerances. */
double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

void enumerate_degree(int d, int degree, std::vector<int>& prefix, std::vector<int>& out) {
    if (static_cast<int>(prefix.size()) == d - 1) {
        out.insert(out.end(), prefix.begin(), prefix.end());
        out.push_back(degree);
        return;
    }
    for (int v = degree; v >= 0; --v) {
        prefix.push_back(v);
        enumerate_degree(d, degree - v, prefix, out);
        prefix.pop_back();
    }
}

} // namespace

LiftedSpace::LiftedSpace(int d, int k, Parity parity) : d_(d), k_(k), parity_(parity) {
    const std::uint64_t n = lifted_dim(d, k, parity); // validates d, k, parity
    if (n > 10'000'000ull)
        throw ResourceError("LiftedSpace: index table would exceed 10^7 entries");

    indices_.reserve(static_cast<std::size_t>(n) * d);
    std::vector<int> prefix;
    for (int degree = 0; degree <= k; ++degree) {
        if (parity_ == Parity::even && degree % 2 != 0) continue;
        if (parity_ == Parity::odd && degree % 2 != 1) continue;
        enumerate_degree(d, degree, prefix, indices_);
    }

    const std::size_t dim = indices_.size() / static_cast<std::size_t>(d);
    degrees_.resize(dim);
    scalings_.resize(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        const int* m = indices_.data() + i * static_cast<std::size_t>(d);
        int total = 0;
        double denom = 1.0;
        for (int c = 0; c < d; ++c) {
            total += m[c];
            denom *= factorial(m[c]);
        }
        degrees_[i] = total;
        scalings_[i] = std::sqrt(factorial(total) / denom);
    }
}

std::vector<double> LiftedSpace::lift_point(const double* x) const {
    double amax = 0.0;
    for (int c = 0; c < d_; ++c) amax = std::max(amax, std::abs(x[c]));
    if (amax > 1.0 && k_ * std::log(amax) > 250.0)
        throw ParameterError("lift_point: coordinates too large for degree k");

    std::vector<double> out(dim());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const int* m = index(i);
        double v = scalings_[i];
        for (int c = 0; c < d_; ++c)
            for (int e = 0; e < m[c]; ++e) v *= x[c];
        out[i] = v;
    }
    return out;
}

Matrix LiftedSpace::lift_points(const Matrix& points) const {
    if (points.cols() != static_cast<std::size_t>(d_))
        throw ContractViolation("lift_points: point dimension mismatch");
    Matrix out(points.rows(), dim());
    for (std::size_t r = 0; r < points.rows(); ++r) {
        const std::vector<double> lifted = lift_point(points.row(r));
        std::copy(lifted.begin(), lifted.end(), out.row(r));
    }
    return out;
}

std::vector<double> LiftedSpace::lift_functional(const double* y,
                                                 const std::vector<double>& alpha) const {
    if (alpha.size() != static_cast<std::size_t>(k_) + 1)
        throw ContractViolation("lift_functional: need one coefficient per degree 0..k");
    std::vector<double> out(dim());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const int* m = index(i);
        double v = alpha[degrees_[i]] * scalings_[i];
        for (int c = 0; c < d_; ++c)
            for (int e = 0; e < m[c]; ++e) v *= y[c];
        out[i] = v;
    }
    return out;
}

} // namespace thrifty
