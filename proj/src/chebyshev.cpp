#include "thrifty/chebyshev.hpp"

#include "thrifty/errors.hpp"

#include <cmath>
#include <limits>
#include <optional>

namespace thrifty {

namespace {

constexpr std::uint64_t kU64Max = std::numeric_limits<std::uint64_t>::max();

/* C(n, r) exactly, or nullopt once the value passes 2^64 - 1. Every
 * intermediate acc equals C(n - r + i, i), so the division is exact. */
std::optional<std::uint64_t> binom_exact(std::uint64_t n, std::uint64_t r) {
    if (r > n) return std::uint64_t{0};
    if (n - r < r) r = n - r;
    unsigned __int128 acc = 1;
    for (std::uint64_t i = 1; i <= r; ++i) {
        acc = acc * (n - r + i) / i;
        if (acc > kU64Max) return std::nullopt;
    }
    return static_cast<std::uint64_t>(acc);
}

double binom_log(double n, double r) {
    return std::lgamma(n + 1.0) - std::lgamma(r + 1.0) - std::lgamma(n - r + 1.0);
}

bool degree_enabled(int degree, Parity parity) {
    switch (parity) {
        case Parity::full: return true;
        case Parity::even: return degree % 2 == 0;
        case Parity::odd: return degree % 2 == 1;
    }
    return false;
}

void check_parity(int k, Parity parity) {
    if (parity == Parity::even && k % 2 != 0)
        throw ParameterError("parity even requires even k");
    if (parity == Parity::odd && k % 2 != 1)
        throw ParameterError("parity odd requires odd k");
}

/* log(lifted_dim) without overflow: log-sum-exp over the per-degree
 * binomial logs. */
double lifted_dim_log(int d, int k, Parity parity) {
    double lmax = -std::numeric_limits<double>::infinity();
    std::vector<double> logs;
    for (int j = 0; j <= k; ++j) {
        if (!degree_enabled(j, parity)) continue;
        const double lg = binom_log(d + j - 1.0, j);
        logs.push_back(lg);
        lmax = std::max(lmax, lg);
    }
    double s = 0.0;
    for (double lg : logs) s += std::exp(lg - lmax);
    return lmax + std::log(s);
}

std::optional<std::uint64_t> lifted_dim_checked(int d, int k, Parity parity) {
    unsigned __int128 total = 0;
    for (int j = 0; j <= k; ++j) {
        if (!degree_enabled(j, parity)) continue;
        auto term = binom_exact(static_cast<std::uint64_t>(d) + j - 1, static_cast<std::uint64_t>(j));
        if (!term) return std::nullopt;
        total += *term;
        if (total > kU64Max) return std::nullopt;
    }
    return static_cast<std::uint64_t>(total);
}

Parity pick_parity(int k, double mu) {
    if (mu == 1.0) return k % 2 == 0 ? Parity::even : Parity::odd;
    return Parity::full;
}

void check_dk(int d, int k) {
    if (d < 1) throw ParameterError("dimension must be >= 1");
    if (k < 1 || k > 64) throw ParameterError("degree k must be in [1, 64]");
}

} // namespace

std::string parity_name(Parity p) {
    switch (p) {
        case Parity::full: return "full";
        case Parity::even: return "even";
        case Parity::odd: return "odd";
    }
    return "full";
}

double cheb_eval(int k, double t) {
    if (k < 0) throw ParameterError("cheb_eval: k must be >= 0");
    if (t >= 1.0) return growth_bound(k, t);
    if (t <= -1.0) {
        const double v = growth_bound(k, -t);
        return k % 2 == 0 ? v : -v;
    }
    return std::cos(static_cast<double>(k) * std::acos(t));
}

double growth_bound(int k, double t) {
    if (k < 0) throw ParameterError("growth_bound: k must be >= 0");
    if (t < 1.0) throw ParameterError("growth_bound: t must be >= 1");
    // sqrt(t-1)*sqrt(t+1) avoids the cancellation in sqrt(t^2-1) near t = 1,
    // and (t+r)(t-r) = 1 exactly, so the small branch is 1/q.
    const double r = std::sqrt(t - 1.0) * std::sqrt(t + 1.0);
    const double q = t + r;
    const double qk = std::pow(q, k);
    return 0.5 * (qk + 1.0 / qk);
}

std::vector<double> cheb_coeffs(int k) {
    if (k < 0) throw ParameterError("cheb_coeffs: k must be >= 0");
    std::vector<double> prev{1.0};       // T_0
    if (k == 0) return prev;
    std::vector<double> cur{0.0, 1.0};   // T_1
    for (int j = 2; j <= k; ++j) {
        std::vector<double> next(j + 1, 0.0);
        for (std::size_t i = 0; i < cur.size(); ++i) next[i + 1] = 2.0 * cur[i];
        for (std::size_t i = 0; i < prev.size(); ++i) next[i] -= prev[i];
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

double lambda_shift(double tau, double mu) {
    if (mu < 1.0) throw ParameterError("lambda_shift: mu must be >= 1");
    return (2.0 * tau + mu - 1.0) / (mu + 1.0);
}

double s_eval(int k, double mu, double t) { return cheb_eval(k, lambda_shift(t, mu)); }

std::vector<double> s_coeffs(int k, double mu) {
    if (mu < 1.0) throw ParameterError("s_coeffs: mu must be >= 1");
    const double a = 2.0 / (mu + 1.0);
    const double b = (mu - 1.0) / (mu + 1.0);
    const std::vector<double> alpha = cheb_coeffs(k);
    std::vector<double> out(static_cast<std::size_t>(k) + 1, 0.0);
    std::vector<double> pw{1.0}; // (a t + b)^j, ascending degree
    out[0] += alpha[0];
    for (int j = 1; j <= k; ++j) {
        std::vector<double> next(pw.size() + 1, 0.0);
        for (std::size_t i = 0; i < pw.size(); ++i) {
            next[i] += b * pw[i];
            next[i + 1] += a * pw[i];
        }
        pw = std::move(next);
        for (std::size_t i = 0; i < pw.size(); ++i) out[i] += alpha[j] * pw[i];
    }
    return out;
}

std::uint64_t lifted_dim(int d, int k, Parity parity) {
    check_dk(d, k);
    check_parity(k, parity);
    auto n = lifted_dim_checked(d, k, parity);
    if (!n) throw ResourceError("lifted_dim: dimension exceeds 2^63-1");
    return *n;
}

Feasibility feasibility(int d, int k, double tau, double mu, Parity parity) {
    check_dk(d, k);
    check_parity(k, parity);
    if (!(tau >= 1.0)) throw ParameterError("feasibility: tau must be >= 1");
    if (!(mu >= 1.0)) throw ParameterError("feasibility: mu must be >= 1");
    if (parity != Parity::full && mu != 1.0)
        throw ParameterError("feasibility: parity refinement requires mu = 1");

    const double lambda = lambda_shift(tau, mu);
    const double r = std::sqrt(lambda - 1.0) * std::sqrt(lambda + 1.0);
    const double logq = std::log(lambda + r);
    // 2*T_k(lambda) = q^k + q^-k, computed in log space so huge k*logq
    // cannot overflow before the comparison.
    const double log_lhs = k * logq + std::log1p(std::exp(-2.0 * k * logq));

    auto n_exact = lifted_dim_checked(d, k, parity);
    const double log_n = n_exact ? std::log(static_cast<double>(*n_exact))
                                 : lifted_dim_log(d, k, parity);
    const double log_rhs = std::log(6.0) + 0.5 * log_n;

    Feasibility out;
    out.ok = log_lhs >= log_rhs;
    if (log_lhs > 700.0 && log_rhs > 700.0)
        out.margin = out.ok ? std::numeric_limits<double>::infinity()
                            : -std::numeric_limits<double>::infinity();
    else
        out.margin = std::exp(log_lhs) - std::exp(log_rhs);
    return out;
}

ApproxParams min_k(int d, double tau, double mu) {
    if (d < 1) throw ParameterError("min_k: dimension must be >= 1");
    if (!(tau > 1.0)) throw ParameterError("min_k: tau must be > 1");
    if (!(mu >= 1.0)) throw ParameterError("min_k: mu must be >= 1");
    for (int k = 1; k <= 64; ++k) {
        const Parity parity = pick_parity(k, mu);
        if (!feasibility(d, k, tau, mu, parity).ok) continue;
        ApproxParams p;
        p.d = d;
        p.k = k;
        p.tau = tau;
        p.mu = mu;
        p.lambda = lambda_shift(tau, mu);
        p.parity = parity;
        p.lifted_dim_value = lifted_dim(d, k, parity);
        if (p.lifted_dim_value > kU64Max / 8)
            throw ResourceError("min_k: vertex bound exceeds 2^63-1");
        p.vertex_bound = 8 * p.lifted_dim_value;
        return p;
    }
    throw ParameterError("min_k: no k <= 64 satisfies the bound; increase tau");
}

double max_tau(int d, int k, double mu) {
    check_dk(d, k);
    if (!(mu >= 1.0)) throw ParameterError("max_tau: mu must be >= 1");
    const Parity parity = pick_parity(k, mu);
    const auto feasible = [&](double tau) { return feasibility(d, k, tau, mu, parity).ok; };

    double lo = 1.0 + 1e-12;
    if (feasible(lo)) return lo;
    double hi = 2.0;
    while (!feasible(hi)) {
        hi *= 2.0;
        if (hi > 1e60) throw AlgorithmFailure("max_tau: no feasible tau found", hi);
    }
    while (hi - lo > 1e-9) {
        const double mid = 0.5 * (lo + hi);
        if (feasible(mid))
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

} // namespace thrifty
