#include "thrifty/bodies.hpp"

#include "thrifty/errors.hpp"
#include "thrifty/kernels.hpp"
#include "thrifty/rng.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace thrifty {

namespace {

Matrix points_as_columns(const Matrix& points) {
    Matrix cols(points.cols(), points.rows());
    for (std::size_t r = 0; r < points.rows(); ++r)
        for (std::size_t c = 0; c < points.cols(); ++c) cols(c, r) = points(r, c);
    return cols;
}

/* Exact negation closure: every row's coordinate-wise negation must occur
 * verbatim in the set. */
bool closed_under_negation(const Matrix& points) {
    std::map<std::vector<double>, std::size_t> counts;
    for (std::size_t r = 0; r < points.rows(); ++r) {
        std::vector<double> row(points.row(r), points.row(r) + points.cols());
        ++counts[row];
    }
    for (auto& [row, count] : counts) {
        std::vector<double> neg(row.size());
        for (std::size_t i = 0; i < row.size(); ++i) neg[i] = -row[i];
        auto it = counts.find(neg);
        if (it == counts.end() || it->second != count) return false;
    }
    return true;
}

double gauge_against_columns(const Matrix& cols, const std::vector<double>& c) {
    LpResult lp = lp_min_sum(cols, c);
    if (lp.status != LpStatus::optimal)
        throw ContractViolation("gauge: target outside the cone of the body points");
    return lp.value;
}

} // namespace

BodySample::BodySample(std::string name, std::size_t dim, Matrix points, bool symmetric)
    : name_(std::move(name)), dim_(dim), points_(std::move(points)), symmetric_(symmetric) {
    if (dim_ == 0) throw ContractViolation("BodySample: dimension must be >= 1");
    if (points_.cols() != dim_) throw ContractViolation("BodySample: point width != dim");
    if (points_.rows() < dim_ + 1)
        throw ContractViolation("BodySample: need at least dim+1 points");
    for (std::size_t i = 0, n = points_.rows() * points_.cols(); i < n; ++i)
        if (!std::isfinite(points_.data()[i]))
            throw ContractViolation("BodySample: non-finite coordinate");

    if (symmetric_ && !closed_under_negation(points_))
        throw ContractViolation("BodySample: symmetric flag set but set is not closed under negation");

    if (orthonormal_span(points_).rank != dim_)
        throw ContractViolation("BodySample: points do not span the space");

    if (!symmetric_) {
        // 0 is interior iff every +-e_j lies in the cone of the points; for
        // a spanning symmetric set that is automatic.
        const Matrix cols = points_as_columns(points_);
        std::vector<double> target(dim_, 0.0);
        for (std::size_t j = 0; j < dim_; ++j) {
            for (double sign : {1.0, -1.0}) {
                target[j] = sign;
                if (lp_min_sum(cols, target).status != LpStatus::optimal)
                    throw ContractViolation("BodySample: origin is not interior to the hull");
            }
            target[j] = 0.0;
        }
    }
}

double support(const BodySample& body, const std::vector<double>& y) {
    if (y.size() != body.dim()) throw ContractViolation("support: direction size mismatch");
    std::vector<double> dots(body.size());
    kernels::matvec(body.points().data(), body.size(), body.dim(), y.data(), dots.data());
    return *std::max_element(dots.begin(), dots.end());
}

double gauge(const BodySample& body, const std::vector<double>& c) {
    if (c.size() != body.dim()) throw ContractViolation("gauge: target size mismatch");
    return gauge_against_columns(points_as_columns(body.points()), c);
}

SymmetryCoefficient symmetry_mu(const BodySample& body) {
    const Matrix cols = points_as_columns(body.points());
    SymmetryCoefficient out;
    out.mu = 1.0;
    out.witness = 0;
    std::vector<double> neg(body.dim());
    for (std::size_t i = 0; i < body.size(); ++i) {
        for (std::size_t c = 0; c < body.dim(); ++c) neg[c] = -body.point(i)[c];
        const double g = gauge_against_columns(cols, neg);
        if (g > out.mu) {
            out.mu = g;
            out.witness = i;
        }
    }
    return out;
}

namespace {

BodySample make_generated(const std::string& name, std::size_t dim, Matrix points, bool symmetric) {
    return BodySample(name, dim, std::move(points), symmetric);
}

Matrix ball_points(std::size_t dim, std::size_t n, Rng& rng) {
    Matrix pts(n, dim);
    for (std::size_t i = 0; i < n / 2; ++i) {
        double norm2 = 0.0;
        std::vector<double> v(dim);
        do {
            norm2 = 0.0;
            for (std::size_t c = 0; c < dim; ++c) {
                v[c] = rng.normal();
                norm2 += v[c] * v[c];
            }
        } while (norm2 < 1e-24);
        const double inv = 1.0 / std::sqrt(norm2);
        for (std::size_t c = 0; c < dim; ++c) {
            pts(2 * i, c) = v[c] * inv;
            pts(2 * i + 1, c) = -v[c] * inv;
        }
    }
    return pts;
}

void check_pair_count(std::size_t dim, std::size_t n) {
    if (n < 2 * dim) throw ParameterError("generate: need n >= 2*dim points");
    if (n % 2 != 0) throw ParameterError("generate: negation closure needs an even n");
}

/* Column-wise Gram-Schmidt with a pivot floor; fails (returns false) on
 * near-dependence so the caller can redraw. */
bool orthonormalize_columns(Matrix& a) {
    const std::size_t d = a.rows();
    for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t prev = 0; prev < j; ++prev) {
            double dot = 0.0;
            for (std::size_t r = 0; r < d; ++r) dot += a(r, j) * a(r, prev);
            for (std::size_t r = 0; r < d; ++r) a(r, j) -= dot * a(r, prev);
        }
        double norm2 = 0.0;
        for (std::size_t r = 0; r < d; ++r) norm2 += a(r, j) * a(r, j);
        if (norm2 < 1e-12) return false;
        const double inv = 1.0 / std::sqrt(norm2);
        for (std::size_t r = 0; r < d; ++r) a(r, j) *= inv;
    }
    return true;
}

} // namespace

BodyKind body_kind_from_name(const std::string& name) {
    if (name == "ball_sample") return BodyKind::ball_sample;
    if (name == "cube") return BodyKind::cube;
    if (name == "cross_polytope") return BodyKind::cross_polytope;
    if (name == "simplex") return BodyKind::simplex;
    if (name == "random_symmetric") return BodyKind::random_symmetric;
    if (name == "ellipsoid_sample") return BodyKind::ellipsoid_sample;
    throw ParameterError("unknown body kind: " + name);
}

std::string body_kind_name(BodyKind kind) {
    switch (kind) {
        case BodyKind::ball_sample: return "ball_sample";
        case BodyKind::cube: return "cube";
        case BodyKind::cross_polytope: return "cross_polytope";
        case BodyKind::simplex: return "simplex";
        case BodyKind::random_symmetric: return "random_symmetric";
        case BodyKind::ellipsoid_sample: return "ellipsoid_sample";
    }
    throw ParameterError("unknown body kind");
}

BodySample generate(BodyKind kind, std::size_t dim, std::size_t n, std::uint64_t seed) {
    if (dim == 0) throw ParameterError("generate: dimension must be >= 1");
    std::ostringstream name;
    name << body_kind_name(kind) << "_d" << dim;

    switch (kind) {
        case BodyKind::cube: {
            if (dim > 20) throw ParameterError("generate: cube limited to dim <= 20");
            const std::size_t count = std::size_t{1} << dim;
            Matrix pts(count, dim);
            for (std::size_t r = 0; r < count; ++r)
                for (std::size_t c = 0; c < dim; ++c)
                    pts(r, c) = ((r >> c) & 1u) != 0 ? -1.0 : 1.0;
            return make_generated(name.str(), dim, std::move(pts), true);
        }
        case BodyKind::cross_polytope: {
            Matrix pts(2 * dim, dim);
            for (std::size_t i = 0; i < dim; ++i) {
                pts(2 * i, i) = 1.0;
                pts(2 * i + 1, i) = -1.0;
            }
            return make_generated(name.str(), dim, std::move(pts), true);
        }
        case BodyKind::simplex: {
            // Helmert coordinates: v_i[j] = h_j[i], an isometric image of the
            // centered standard simplex, then scaled to unit circumradius.
            Matrix pts(dim + 1, dim);
            for (std::size_t j = 1; j <= dim; ++j) {
                const double denom = 1.0 / std::sqrt(static_cast<double>(j) * (j + 1));
                for (std::size_t i = 0; i < dim + 1; ++i) {
                    double h = 0.0;
                    if (i < j)
                        h = denom;
                    else if (i == j)
                        h = -static_cast<double>(j) * denom;
                    pts(i, j - 1) = h;
                }
            }
            const double scale = std::sqrt(static_cast<double>(dim + 1) / dim);
            kernels::scale(scale, pts.data(), pts.rows() * pts.cols());
            return make_generated(name.str(), dim, std::move(pts), false);
        }
        case BodyKind::ball_sample: {
            check_pair_count(dim, n);
            name << "_n" << n << "_s" << seed;
            Rng rng(seed);
            return make_generated(name.str(), dim, ball_points(dim, n, rng), true);
        }
        case BodyKind::random_symmetric: {
            check_pair_count(dim, n);
            name << "_n" << n << "_s" << seed;
            Rng rng(seed);
            Matrix pts(n, dim);
            for (std::size_t i = 0; i < n / 2; ++i) {
                const double radius = 0.5 + 1.5 * rng.uniform();
                for (std::size_t c = 0; c < dim; ++c) {
                    const double v = radius * rng.normal();
                    pts(2 * i, c) = v;
                    pts(2 * i + 1, c) = -v;
                }
            }
            return make_generated(name.str(), dim, std::move(pts), true);
        }
        case BodyKind::ellipsoid_sample: {
            check_pair_count(dim, n);
            name << "_n" << n << "_s" << seed;
            Rng rng(seed);
            // A = Q * diag(s), s in [0.5, 2]: invertible by construction.
            Matrix q(dim, dim);
            do {
                for (std::size_t i = 0; i < dim * dim; ++i) q.data()[i] = rng.normal();
            } while (!orthonormalize_columns(q));
            std::vector<double> diag(dim);
            for (std::size_t c = 0; c < dim; ++c)
                diag[c] = 0.5 * std::exp(rng.uniform() * std::log(4.0));
            Matrix a(dim, dim);
            for (std::size_t r = 0; r < dim; ++r)
                for (std::size_t c = 0; c < dim; ++c) a(r, c) = q(r, c) * diag[c];

            Matrix ball = ball_points(dim, n, rng);
            Matrix pts(n, dim);
            for (std::size_t r = 0; r < n; ++r)
                kernels::matvec(a.data(), dim, dim, ball.row(r), pts.row(r));
            return make_generated(name.str(), dim, std::move(pts), true);
        }
    }
    throw ParameterError("generate: unknown kind");
}

/* ------------------------------------------------------------------ JSON */

BodySample parse_body_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ContractViolation(std::string("body JSON: parse failure: ") + e.what());
    }
    if (!j.is_object() || !j.contains("name") || !j.contains("dim") || !j.contains("symmetric") ||
        !j.contains("points"))
        throw ContractViolation("body JSON: need name, dim, symmetric, points");
    if (!j["name"].is_string() || !j["dim"].is_number_unsigned() || !j["symmetric"].is_boolean() ||
        !j["points"].is_array())
        throw ContractViolation("body JSON: field type mismatch");

    const std::size_t dim = j["dim"].get<std::size_t>();
    const auto& rows = j["points"];
    Matrix pts(rows.size(), dim);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (!rows[r].is_array() || rows[r].size() != dim)
            throw ContractViolation("body JSON: point row width != dim");
        for (std::size_t c = 0; c < dim; ++c) {
            if (!rows[r][c].is_number())
                throw ContractViolation("body JSON: non-numeric coordinate");
            const double v = rows[r][c].get<double>();
            if (!std::isfinite(v)) throw ContractViolation("body JSON: non-finite coordinate");
            pts(r, c) = v;
        }
    }
    return BodySample(j["name"].get<std::string>(), dim, std::move(pts),
                      j["symmetric"].get<bool>());
}

std::string body_to_json_string(const BodySample& body) {
    nlohmann::json j;
    j["name"] = body.name();
    j["dim"] = body.dim();
    j["symmetric"] = body.symmetric();
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t r = 0; r < body.size(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t c = 0; c < body.dim(); ++c) row.push_back(body.points()(r, c));
        rows.push_back(std::move(row));
    }
    j["points"] = std::move(rows);
    return j.dump(2) + "\n";
}

BodySample load_body(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParameterError("cannot open body file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_body_json(buf.str());
}

void save_body(const BodySample& body, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParameterError("cannot write body file: " + path);
    out << body_to_json_string(body);
}

} // namespace thrifty
