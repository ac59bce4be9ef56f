#include "thrifty/approx.hpp"
#include "thrifty/bodies.hpp"
#include "thrifty/chebyshev.hpp"
#include "thrifty/errors.hpp"
#include "thrifty/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

namespace {

using namespace thrifty;

constexpr std::uint64_t kDefaultSeed = 424242;

std::uint64_t default_seed() {
    const char* env = std::getenv("THRIFTY_SEED");
    if (env == nullptr || *env == '\0') return kDefaultSeed;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0')
        throw ParameterError("THRIFTY_SEED must be an unsigned integer");
    return v;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParameterError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParameterError("cannot write " + path);
    out << text;
}

BodyKind kind_from_cli(const std::string& name) {
    if (name == "ball") return BodyKind::ball_sample;
    if (name == "cross") return BodyKind::cross_polytope;
    if (name == "ellipsoid") return BodyKind::ellipsoid_sample;
    return body_kind_from_name(name);
}

std::string sanitize_csv(std::string s) {
    for (char& c : s) {
        if (c == ',') c = ';';
        if (c == '\n' || c == '\r') c = ' ';
    }
    return s;
}

double verify_ms_of(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

struct GenArgs {
    std::string kind;
    std::size_t dim = 0;
    std::size_t n = 0;
    std::uint64_t seed = kDefaultSeed;
    std::string out;
};

int cmd_gen(const GenArgs& a) {
    const BodySample body = generate(kind_from_cli(a.kind), a.dim, a.n, a.seed);
    write_output(a.out, body_to_json_string(body));
    return 0;
}

struct ParamsArgs {
    int d = 0;
    int k = 0;
    double tau = 0.0;
    double mu = 1.0;
    bool has_k = false;
    bool has_tau = false;
    bool csv = false;
};

int cmd_params(const ParamsArgs& a) {
    int k;
    Parity parity;
    double margin_at;
    if (a.has_tau) {
        const ApproxParams p = min_k(a.d, a.tau, a.mu);
        k = p.k;
        parity = p.parity;
        margin_at = a.tau;
    } else {
        k = a.k;
        parity = a.mu == 1.0 ? (k % 2 != 0 ? Parity::odd : Parity::even) : Parity::full;
        margin_at = 0.0; // placeholder, set below once tau is known
    }
    const double guaranteed = max_tau(a.d, k, a.mu);
    if (!a.has_tau) margin_at = guaranteed;
    const std::uint64_t n = lifted_dim(a.d, k, parity);
    const Feasibility feas = feasibility(a.d, k, margin_at, a.mu, parity);

    std::ostringstream out;
    if (a.csv) {
        out << "d,mu,k,parity,lifted_dim,vertex_bound,guaranteed_tau,margin\n"
            << a.d << ',' << fmt(a.mu) << ',' << k << ',' << parity_name(parity) << ',' << n
            << ',' << 8 * n << ',' << fmt(guaranteed) << ',' << fmt(feas.margin) << '\n';
    } else {
        out << "d              " << a.d << '\n'
            << "mu             " << fmt(a.mu) << '\n'
            << "k              " << k << '\n'
            << "parity         " << parity_name(parity) << '\n'
            << "lifted_dim     " << n << '\n'
            << "vertex_bound   " << 8 * n << '\n'
            << "guaranteed_tau " << fmt(guaranteed) << '\n'
            << "margin         " << fmt(feas.margin) << '\n';
    }
    std::cout << out.str();
    return 0;
}

struct ApproxArgs {
    std::string body_path;
    std::string kind;
    std::size_t dim = 0;
    std::size_t n = 0;
    int k = 0;
    double tau = 0.0;
    bool has_k = false;
    bool has_tau = false;
    double gamma = 4.0;
    std::uint64_t cap = 5000;
    std::uint64_t seed = kDefaultSeed;
    std::size_t n_dirs = 200;
    bool no_verify = false;
    std::string out;
};

BodySample acquire_body(const std::string& body_path, const std::string& kind, std::size_t dim,
                        std::size_t n, std::uint64_t seed) {
    if (!body_path.empty()) return load_body(body_path);
    if (kind.empty()) throw ParameterError("provide either --body or --kind with --dim");
    return generate(kind_from_cli(kind), dim, n, seed);
}

int cmd_approx(const ApproxArgs& a) {
    const BodySample body = acquire_body(a.body_path, a.kind, a.dim, a.n, a.seed);
    ApproxOptions opts;
    opts.gamma = a.gamma;
    opts.lifted_dim_cap = a.cap;
    ApproxResult result =
        a.has_k ? approximate_with_degree(body, a.k, opts) : approximate_to_tau(body, a.tau, opts);

    bool pass = true;
    nlohmann::json j;
    if (a.no_verify) {
        j = nlohmann::json::parse(result_to_json_string(result));
    } else {
        Certificate cert = achieved_factor(body, result.vertices);
        const DirectionRatios dirs = direction_ratios(body, result.vertices, a.n_dirs, a.seed);
        cert.direction_ratio_max = dirs.max_ratio;
        result.achieved_tau = cert.achieved_tau;
        pass = cert.containment_ok && cert.achieved_tau <= result.guaranteed_tau + 1e-9;
        j = nlohmann::json::parse(result_to_json_string(result));
        j["certificate"] = nlohmann::json::parse(certificate_to_json_string(cert, dirs));
    }
    write_output(a.out, j.dump(2) + "\n");
    return pass ? 0 : 1;
}

struct VerifyArgs {
    std::string body_path;
    std::string result_path;
    std::size_t n_dirs = 200;
    std::uint64_t seed = kDefaultSeed;
    std::string out;
};

int cmd_verify(const VerifyArgs& a) {
    const BodySample body = load_body(a.body_path);
    const ApproxResult result = parse_result_json(read_file(a.result_path));
    Certificate cert = achieved_factor(body, result.vertices);
    const DirectionRatios dirs = direction_ratios(body, result.vertices, a.n_dirs, a.seed);
    cert.direction_ratio_max = dirs.max_ratio;
    write_output(a.out, certificate_to_json_string(cert, dirs));
    const bool pass = cert.containment_ok && cert.achieved_tau <= result.guaranteed_tau + 1e-9 &&
                      dirs.max_ratio <= cert.achieved_tau + 1e-6;
    return pass ? 0 : 1;
}

struct BenchArgs {
    std::string suite_path;
    std::string out;
    std::uint64_t seed = kDefaultSeed;
    std::size_t n_dirs = 200;
};

const char* const kBenchColumns =
    "cell_index,kind,dim,n,k,tau_request,parity,mu,lifted_dim,lifted_rank,guaranteed_tau,"
    "achieved_tau,vertex_count,baseline_count,baseline_achieved_tau,john_residual,bss_ratio,"
    "lift_ms,mvee_ms,bss_ms,assemble_ms,verify_ms,status";

int cmd_bench(const BenchArgs& a) {
    nlohmann::json suite;
    try {
        suite = nlohmann::json::parse(read_file(a.suite_path));
    } catch (const nlohmann::json::exception& e) {
        throw ParameterError(std::string("suite JSON: ") + e.what());
    }
    if (!suite.contains("cells") || !suite["cells"].is_array() || suite["cells"].empty())
        throw ParameterError("suite JSON: expected a nonempty 'cells' array");

    std::ostringstream csv;
    csv << kBenchColumns << '\n';
    bool all_ok = true;

    for (std::size_t idx = 0; idx < suite["cells"].size(); ++idx) {
        const auto& cell = suite["cells"][idx];
        std::string kind = cell.value("kind", std::string{});
        const std::size_t dim = cell.value("dim", std::size_t{0});
        const std::size_t n_req = cell.value("n", std::size_t{0});
        const std::uint64_t seed = cell.value("seed", a.seed);
        const bool has_k = cell.contains("k");
        const bool has_tau = cell.contains("tau");
        const std::string tau_request =
            has_tau && cell["tau"].is_number() ? fmt(cell["tau"].get<double>()) : std::string{};
        const std::string k_request = has_k && cell["k"].is_number_integer()
                                          ? std::to_string(cell["k"].get<long long>())
                                          : std::string{};

        csv << idx << ',' << sanitize_csv(kind) << ',' << dim << ',';
        try {
            if (kind.empty() || dim == 0)
                throw ParameterError("cell needs 'kind' and 'dim'");
            if (has_k == has_tau)
                throw ParameterError("cell needs exactly one of 'k' and 'tau'");
            const BodySample body = generate(kind_from_cli(kind), dim, n_req, seed);
            ApproxOptions opts;
            opts.gamma = cell.value("gamma", 4.0);
            opts.lifted_dim_cap = cell.value("cap", std::uint64_t{5000});
            ApproxResult result = has_k
                                      ? approximate_with_degree(body, cell["k"].get<int>(), opts)
                                      : approximate_to_tau(body, cell["tau"].get<double>(), opts);

            const auto t_verify = std::chrono::steady_clock::now();
            const Certificate cert = achieved_factor(body, result.vertices);
            const double verify_ms = verify_ms_of(t_verify);

            const double base_tau = std::max(cert.achieved_tau, 1.0 + 1e-9);
            const Matrix baseline = baseline_net(body, base_tau, seed);
            const Certificate base_cert = achieved_factor(body, baseline);

            const bool ok = cert.containment_ok &&
                            cert.achieved_tau <= result.guaranteed_tau + 1e-9;
            if (!ok) all_ok = false;
            csv << body.size() << ',' << result.k << ',' << tau_request << ','
                << parity_name(result.parity) << ',' << fmt(result.mu) << ','
                << result.lifted_dim_value << ',' << result.lifted_rank << ','
                << fmt(result.guaranteed_tau) << ',' << fmt(cert.achieved_tau) << ','
                << result.vertices.rows() << ',' << baseline.rows() << ','
                << fmt(base_cert.achieved_tau) << ',' << fmt(result.john_residual) << ','
                << fmt(result.bss_ratio) << ',' << fmt(result.lift_ms) << ','
                << fmt(result.mvee_ms) << ',' << fmt(result.bss_ms) << ','
                << fmt(result.assemble_ms) << ',' << fmt(verify_ms) << ','
                << (ok ? "ok" : "certificate_failed") << '\n';
        } catch (const std::exception& e) {
            all_ok = false;
            // pad out to the status column so every row has the full field count
            csv << n_req << ',' << k_request << ',' << tau_request << ",,,,,,,,,,,,,,,,,"
                << sanitize_csv(e.what()) << '\n';
        }
    }
    write_output(a.out, csv.str());
    return all_ok ? 0 : 1;
}

int run_guarded(const std::function<int()>& f) {
    try {
        return f();
    } catch (const ParameterError& e) {
        std::cerr << "parameter error: " << e.what() << '\n';
        return 2;
    } catch (const ContractViolation& e) {
        std::cerr << "contract violation: " << e.what() << '\n';
        return 2;
    } catch (const ResourceError& e) {
        std::cerr << "resource error: " << e.what() << '\n';
        return 1;
    } catch (const CertificationError& e) {
        std::cerr << "certification error: " << e.what() << '\n';
        return 1;
    } catch (const ConvergenceError& e) {
        std::cerr << "convergence error: " << e.what() << '\n';
        return 1;
    } catch (const AlgorithmFailure& e) {
        std::cerr << "algorithm failure: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"thrifty: approximate convex bodies by polytopes with few vertices"};
    app.require_subcommand(1);

    std::uint64_t seed;
    try {
        seed = default_seed();
    } catch (const ParameterError& e) {
        std::cerr << "parameter error: " << e.what() << '\n';
        return 2;
    }

    GenArgs gen;
    gen.seed = seed;
    auto* cmd_gen_p = app.add_subcommand(
        "gen", "Generate a body sample (JSON). Kinds: ball, cube, cross, simplex, "
               "random_symmetric, ellipsoid.");
    cmd_gen_p->add_option("--kind", gen.kind, "generator kind")->required();
    cmd_gen_p->add_option("--dim", gen.dim, "ambient dimension")->required();
    cmd_gen_p->add_option("--n", gen.n, "sample count (sampled kinds only)");
    cmd_gen_p->add_option("--seed", gen.seed, "RNG seed");
    cmd_gen_p->add_option("--out", gen.out, "output path (default: stdout)");

    ParamsArgs params;
    auto* cmd_params_p = app.add_subcommand(
        "params", "Report degree, parity, lifted dimension, vertex bound, and the "
                  "certified factor for a dimension.");
    cmd_params_p->add_option("--d", params.d, "dimension")->required();
    auto* pk = cmd_params_p->add_option("--k", params.k, "polynomial degree");
    auto* pt = cmd_params_p->add_option("--tau", params.tau, "target factor (> 1)");
    cmd_params_p->add_option("--mu", params.mu, "reflection coefficient (default 1)");
    cmd_params_p->add_flag("--csv", params.csv, "emit CSV instead of a table");

    ApproxArgs approx;
    approx.seed = seed;
    auto* cmd_approx_p = app.add_subcommand(
        "approx", "Approximate a body by a polytope with few vertices; verifies and "
                  "emits result JSON.");
    cmd_approx_p->add_option("--body", approx.body_path, "body JSON path");
    cmd_approx_p->add_option("--kind", approx.kind, "generate the body instead of loading");
    cmd_approx_p->add_option("--dim", approx.dim, "dimension for --kind");
    cmd_approx_p->add_option("--n", approx.n, "sample count for --kind");
    auto* ak = cmd_approx_p->add_option("--k", approx.k, "polynomial degree");
    auto* at = cmd_approx_p->add_option("--tau", approx.tau, "target factor (> 1)");
    cmd_approx_p->add_option("--gamma", approx.gamma, "selection oversampling factor");
    cmd_approx_p->add_option("--cap", approx.cap, "lifted dimension cap");
    cmd_approx_p->add_option("--seed", approx.seed, "seed for generation and verification");
    cmd_approx_p->add_option("--n-dirs", approx.n_dirs, "sampled directions in verification");
    cmd_approx_p->add_flag("--no-verify", approx.no_verify, "skip certification");
    cmd_approx_p->add_option("--out", approx.out, "result path (default: stdout)");

    VerifyArgs verify;
    verify.seed = seed;
    auto* cmd_verify_p = app.add_subcommand(
        "verify", "Recompute the certificate for a stored result against a body.");
    cmd_verify_p->add_option("--body", verify.body_path, "body JSON path")->required();
    cmd_verify_p->add_option("--result", verify.result_path, "result JSON path")->required();
    cmd_verify_p->add_option("--n-dirs", verify.n_dirs, "sampled directions");
    cmd_verify_p->add_option("--seed", verify.seed, "direction seed");
    cmd_verify_p->add_option("--out", verify.out, "certificate path (default: stdout)");

    BenchArgs bench;
    bench.seed = seed;
    auto* cmd_bench_p = app.add_subcommand(
        "bench", std::string("Run a suite of cells and emit one CSV row per cell.\n"
                             "Suite JSON: {\"cells\": [{\"kind\", \"dim\", \"n\"?, \"seed\"?, "
                             "\"k\" xor \"tau\", \"gamma\"?, \"cap\"?}, ...]}\nColumns: ") +
                     kBenchColumns);
    cmd_bench_p->add_option("--suite", bench.suite_path, "suite JSON path")->required();
    cmd_bench_p->add_option("--out", bench.out, "CSV path (default: stdout)");
    cmd_bench_p->add_option("--seed", bench.seed, "default seed for cells");
    cmd_bench_p->add_option("--n-dirs", bench.n_dirs, "sampled directions per cell");

    CLI11_PARSE(app, argc, argv);

    if (*cmd_gen_p) return run_guarded([&] { return cmd_gen(gen); });
    if (*cmd_params_p) {
        params.has_k = pk->count() > 0;
        params.has_tau = pt->count() > 0;
        if (params.has_k == params.has_tau) {
            std::cerr << "parameter error: params needs exactly one of --k and --tau\n";
            return 2;
        }
        return run_guarded([&] { return cmd_params(params); });
    }
    if (*cmd_approx_p) {
        approx.has_k = ak->count() > 0;
        approx.has_tau = at->count() > 0;
        if (approx.has_k == approx.has_tau) {
            std::cerr << "parameter error: approx needs exactly one of --k and --tau\n";
            return 2;
        }
        return run_guarded([&] { return cmd_approx(approx); });
    }
    if (*cmd_verify_p) return run_guarded([&] { return cmd_verify(verify); });
    if (*cmd_bench_p) return run_guarded([&] { return cmd_bench(bench); });
    return 2;
}
