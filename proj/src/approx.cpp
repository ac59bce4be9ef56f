#include "thrifty/approx.hpp"

#include "thrifty/errors.hpp"
#include "thrifty/lift.hpp"
#include "thrifty/select.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <map>
#include <utility>

namespace thrifty {

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

// Inflating the measured coefficient keeps the reflected vertices strictly
// inside the sampled hull, so the inner containment check is never a
// knife-edge; any mu above the true minimum certifies the same theorem.
constexpr double kMuInflation = 1.0 + 1e-9;

ApproxResult run_pipeline(const BodySample& body, int k, double mu_used,
                          const ApproxOptions& opts) {
    const int d = static_cast<int>(body.dim());
    const Parity parity =
        body.symmetric() ? (k % 2 != 0 ? Parity::odd : Parity::even) : Parity::full;

    ApproxResult out;
    out.body_name = body.name();
    out.dim = body.dim();
    out.k = k;
    out.parity = parity;
    out.mu = mu_used;
    out.lifted_dim_value = lifted_dim(d, k, parity);
    if (out.lifted_dim_value > opts.lifted_dim_cap)
        throw ResourceError("approximate: lifted dimension " +
                            std::to_string(out.lifted_dim_value) + " exceeds cap " +
                            std::to_string(opts.lifted_dim_cap));
    out.guaranteed_tau = max_tau(d, k, mu_used);

    const auto t_lift = std::chrono::steady_clock::now();
    const LiftedSpace space(d, k, parity);
    const Matrix lifted = space.lift_points(body.points());
    out.lift_ms = ms_since(t_lift);

    const SelectionCertificate cert = select_subset(lifted, opts.gamma);
    out.lifted_rank = cert.rank;
    out.john_residual = cert.john_residual;
    out.bss_ratio = cert.bss_ratio;
    out.mvee_ms = cert.john_ms;
    out.bss_ms = cert.bss_ms;
    out.chosen_indices = cert.chosen;

    const auto t_asm = std::chrono::steady_clock::now();
    const double reflect = body.symmetric() ? -1.0 : -1.0 / mu_used;
    std::map<std::vector<double>, bool> seen;
    std::vector<std::vector<double>> rows;
    const auto push = [&](std::vector<double> v) {
        if (seen.emplace(v, true).second) rows.push_back(std::move(v));
    };
    for (std::size_t idx : cert.chosen) {
        std::vector<double> v(body.point(idx), body.point(idx) + body.dim());
        push(v);
        for (double& c : v) c *= reflect;
        push(std::move(v));
    }
    out.vertices = Matrix(rows.size(), body.dim());
    for (std::size_t i = 0; i < rows.size(); ++i)
        std::copy(rows[i].begin(), rows[i].end(), out.vertices.row(i));
    out.assemble_ms = ms_since(t_asm);
    return out;
}

double effective_mu(const BodySample& body) {
    return body.symmetric() ? 1.0 : symmetry_mu(body).mu * kMuInflation;
}

} // namespace

ApproxResult approximate_with_degree(const BodySample& body, int k, const ApproxOptions& opts) {
    return run_pipeline(body, k, effective_mu(body), opts);
}

ApproxResult approximate_to_tau(const BodySample& body, double tau, const ApproxOptions& opts) {
    if (!(tau > 1.0)) throw ParameterError("approximate_to_tau: tau must exceed 1");
    const double mu_used = effective_mu(body);
    const ApproxParams params = min_k(static_cast<int>(body.dim()), tau, mu_used);
    return run_pipeline(body, params.k, mu_used, opts);
}

std::string result_to_json_string(const ApproxResult& result) {
    nlohmann::json j;
    j["schema"] = 1;
    j["body_name"] = result.body_name;
    j["dim"] = result.dim;
    j["k"] = result.k;
    j["parity"] = parity_name(result.parity);
    j["mu"] = result.mu;
    j["guaranteed_tau"] = result.guaranteed_tau;
    if (result.achieved_tau)
        j["achieved_tau"] = *result.achieved_tau;
    else
        j["achieved_tau"] = nullptr;
    j["lifted_dim"] = result.lifted_dim_value;
    j["lifted_rank"] = result.lifted_rank;
    j["vertex_count"] = result.vertices.rows();
    nlohmann::json verts = nlohmann::json::array();
    for (std::size_t i = 0; i < result.vertices.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t c = 0; c < result.vertices.cols(); ++c)
            row.push_back(result.vertices(i, c));
        verts.push_back(std::move(row));
    }
    j["vertices"] = std::move(verts);
    j["chosen_indices"] = result.chosen_indices;
    j["residuals"] = {{"john", result.john_residual}, {"bss_ratio", result.bss_ratio}};
    j["timings_ms"] = {{"lift", result.lift_ms},
                       {"mvee", result.mvee_ms},
                       {"bss", result.bss_ms},
                       {"assemble", result.assemble_ms}};
    return j.dump(2) + "\n";
}

ApproxResult parse_result_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ContractViolation(std::string("result JSON: ") + e.what());
    }
    const auto need = [&](const char* key) -> const nlohmann::json& {
        if (!j.contains(key))
            throw ContractViolation(std::string("result JSON: missing field ") + key);
        return j.at(key);
    };
    if (!need("schema").is_number_integer() || j["schema"].get<int>() != 1)
        throw ContractViolation("result JSON: unsupported schema");

    ApproxResult out;
    try {
        out.body_name = need("body_name").get<std::string>();
        out.dim = need("dim").get<std::size_t>();
        out.k = need("k").get<int>();
        const std::string parity = need("parity").get<std::string>();
        if (parity == "full")
            out.parity = Parity::full;
        else if (parity == "even")
            out.parity = Parity::even;
        else if (parity == "odd")
            out.parity = Parity::odd;
        else
            throw ContractViolation("result JSON: unknown parity " + parity);
        out.mu = need("mu").get<double>();
        out.guaranteed_tau = need("guaranteed_tau").get<double>();
        if (!need("achieved_tau").is_null()) out.achieved_tau = j["achieved_tau"].get<double>();
        out.lifted_dim_value = need("lifted_dim").get<std::uint64_t>();
        out.lifted_rank = need("lifted_rank").get<std::size_t>();
        out.chosen_indices = need("chosen_indices").get<std::vector<std::size_t>>();
        const auto& verts = need("vertices");
        if (!verts.is_array() || verts.empty())
            throw ContractViolation("result JSON: vertices must be a nonempty array");
        out.vertices = Matrix(verts.size(), out.dim);
        for (std::size_t i = 0; i < verts.size(); ++i) {
            if (!verts[i].is_array() || verts[i].size() != out.dim)
                throw ContractViolation("result JSON: vertex row width mismatch");
            for (std::size_t c = 0; c < out.dim; ++c)
                out.vertices(i, c) = verts[i][c].get<double>();
        }
        if (j.contains("residuals")) {
            out.john_residual = j["residuals"].value("john", 0.0);
            out.bss_ratio = j["residuals"].value("bss_ratio", 0.0);
        }
    } catch (const nlohmann::json::exception& e) {
        throw ContractViolation(std::string("result JSON: ") + e.what());
    }
    if (need("vertex_count").get<std::size_t>() != out.vertices.rows())
        throw ContractViolation("result JSON: vertex_count does not match vertices");
    return out;
}

} // namespace thrifty
