#include "thrifty/verify.hpp"

#include "thrifty/errors.hpp"
#include "thrifty/kernels.hpp"
#include "thrifty/rng.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

namespace thrifty {

namespace {

Matrix rows_as_columns(const Matrix& rows) {
    Matrix cols(rows.cols(), rows.rows());
    for (std::size_t i = 0; i < rows.rows(); ++i)
        for (std::size_t c = 0; c < rows.cols(); ++c) cols(c, i) = rows(i, c);
    return cols;
}

double polytope_gauge(const Matrix& vertex_columns, const std::vector<double>& target) {
    const LpResult res = lp_min_sum(vertex_columns, target);
    if (res.status != LpStatus::optimal)
        throw CertificationError(
            "achieved_factor: body point outside the polytope's cone; "
            "origin is not interior to the hull");
    return res.value;
}

} // namespace

Certificate achieved_factor(const BodySample& body, const Matrix& vertices) {
    if (vertices.rows() == 0) throw ContractViolation("achieved_factor: no vertices");
    if (vertices.cols() != body.dim())
        throw ContractViolation("achieved_factor: vertex dimension mismatch");
    for (std::size_t i = 0; i < vertices.rows() * vertices.cols(); ++i)
        if (!std::isfinite(vertices.data()[i]))
            throw ContractViolation("achieved_factor: non-finite vertex");

    const Matrix cols = rows_as_columns(vertices);
    Certificate cert;
    cert.achieved_tau = -1.0;
    std::vector<double> target(body.dim());
    for (std::size_t i = 0; i < body.size(); ++i) {
        target.assign(body.point(i), body.point(i) + body.dim());
        const double g = polytope_gauge(cols, target);
        if (g > cert.achieved_tau) {
            cert.achieved_tau = g;
            cert.witness_index = i;
        }
    }

    cert.containment_ok = true;
    std::vector<double> v(body.dim());
    for (std::size_t i = 0; i < vertices.rows() && cert.containment_ok; ++i) {
        v.assign(vertices.row(i), vertices.row(i) + vertices.cols());
        try {
            if (gauge(body, v) > 1.0 + 1e-9) cert.containment_ok = false;
        } catch (const ContractViolation&) {
            cert.containment_ok = false;
        }
    }
    return cert;
}

DirectionRatios direction_ratios(const BodySample& body, const Matrix& vertices,
                                 std::size_t n_dirs, std::uint64_t seed) {
    if (n_dirs == 0) throw ParameterError("direction_ratios: n_dirs must be positive");
    if (vertices.rows() == 0 || vertices.cols() != body.dim())
        throw ContractViolation("direction_ratios: bad vertex list");

    Rng rng(seed);
    std::vector<double> y(body.dim());
    std::vector<double> body_vals(body.size()), vert_vals(vertices.rows());
    std::vector<double> ratios;
    ratios.reserve(n_dirs);
    for (std::size_t t = 0; t < n_dirs; ++t) {
        for (double& c : y) c = rng.normal();
        kernels::matvec(body.points().data(), body.size(), body.dim(), y.data(),
                        body_vals.data());
        kernels::matvec(vertices.data(), vertices.rows(), vertices.cols(), y.data(),
                        vert_vals.data());
        const double sup_c = *std::max_element(body_vals.begin(), body_vals.end());
        const double sup_p = *std::max_element(vert_vals.begin(), vert_vals.end());
        if (!(sup_p > 0.0))
            throw CertificationError(
                "direction_ratios: polytope support not positive; origin not interior");
        ratios.push_back(sup_c / sup_p);
    }

    DirectionRatios out;
    out.n_dirs = n_dirs;
    out.seed = seed;
    out.min_ratio = *std::min_element(ratios.begin(), ratios.end());
    out.max_ratio = *std::max_element(ratios.begin(), ratios.end());
    out.histogram.assign(16, 0);
    const double width = (out.max_ratio - out.min_ratio) / 16.0;
    for (double r : ratios) {
        std::size_t bin = 0;
        if (width > 0.0)
            bin = std::min<std::size_t>(15,
                                        static_cast<std::size_t>((r - out.min_ratio) / width));
        ++out.histogram[bin];
    }
    return out;
}

Matrix baseline_net(const BodySample& body, double tau, std::uint64_t seed) {
    if (!(tau > 1.0)) throw ParameterError("baseline_net: tau must exceed 1");
    const std::size_t n = body.size();
    const std::size_t d = body.dim();

    std::map<std::vector<double>, std::size_t> first_index;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> row(body.point(i), body.point(i) + d);
        first_index.emplace(std::move(row), i);
    }

    std::vector<std::size_t> order;
    std::set<std::size_t> member;
    const auto add = [&](std::size_t i) {
        if (!member.insert(i).second) return;
        order.push_back(i);
        if (!body.symmetric()) return;
        std::vector<double> neg(body.point(i), body.point(i) + d);
        for (double& c : neg) c = -c;
        const auto it = first_index.find(neg);
        if (it != first_index.end() && member.insert(it->second).second)
            order.push_back(it->second);
    };

    const auto subset_matrix = [&] {
        Matrix m(order.size(), d);
        for (std::size_t i = 0; i < order.size(); ++i)
            std::copy(body.point(order[i]), body.point(order[i]) + d, m.row(i));
        return m;
    };

    const auto argmax_dir = [&](const std::vector<double>& u) {
        std::size_t best = 0;
        double best_val = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i) {
            const double v = kernels::dot(body.point(i), u.data(), d);
            if (v > best_val) {
                best_val = v;
                best = i;
            }
        }
        return best;
    };

    Rng rng(seed);
    std::vector<double> probe(d);
    for (double& c : probe) c = rng.normal();
    add(argmax_dir(probe));

    // Grow until the origin is interior: every signed axis must lie in the
    // cone of the picked points.
    for (;;) {
        const Matrix cols = rows_as_columns(subset_matrix());
        std::vector<double> axis(d, 0.0);
        bool interior = true;
        std::vector<double> missing;
        for (std::size_t j = 0; j < d && interior; ++j) {
            for (double sign : {1.0, -1.0}) {
                axis.assign(d, 0.0);
                axis[j] = sign;
                if (lp_min_sum(cols, axis).status != LpStatus::optimal) {
                    interior = false;
                    missing = axis;
                    break;
                }
            }
        }
        if (interior) break;
        const std::size_t before = order.size();
        add(argmax_dir(missing));
        if (order.size() == before) {
            std::size_t fallback = n;
            for (std::size_t i = 0; i < n; ++i)
                if (!member.count(i)) {
                    fallback = i;
                    break;
                }
            if (fallback == n)
                throw ContractViolation("baseline_net: origin not interior to the body");
            add(fallback);
        }
    }

    for (;;) {
        const Matrix verts = subset_matrix();
        const Certificate cert = achieved_factor(body, verts);
        if (cert.achieved_tau <= tau) return verts;
        const std::size_t before = order.size();
        add(cert.witness_index);
        if (order.size() == before)
            throw AlgorithmFailure("baseline_net: witness already selected", cert.achieved_tau);
    }
}

std::string certificate_to_json_string(const Certificate& cert, const DirectionRatios& dirs) {
    nlohmann::json j;
    j["achieved_tau"] = cert.achieved_tau;
    j["witness_index"] = cert.witness_index;
    j["containment_ok"] = cert.containment_ok;
    j["direction_ratio_max"] = dirs.max_ratio;
    j["n_dirs"] = dirs.n_dirs;
    j["seed"] = dirs.seed;
    return j.dump(2) + "\n";
}

} // namespace thrifty
