#pragma once

#include <cstdint>
#include <string>
#include <vector>

/* Chebyshev evaluation and the feasibility arithmetic that ties the
 * polynomial degree k, the dimension d, the dilation factor tau, and the
 * asymmetry coefficient mu together. All certified bounds funnel through
 * feasibility(): 2*T_k(lambda(tau,mu)) >= 6*sqrt(lifted dimension).
 */
namespace thrifty {

enum class Parity { full, even, odd };

std::string parity_name(Parity p);

/* T_k(t), exact for all real t: cosine form on [-1,1], the surd form
 * ((t-sqrt(t^2-1))^k + (t+sqrt(t^2-1))^k)/2 outside, with the square root
 * split as sqrt(t-1)*sqrt(t+1) so the branch is stable near t = 1. */
double cheb_eval(int k, double t);

/* Monomial coefficients of T_k, index = degree, size k+1. Built from the
 * three-term recurrence; exact in double through k = 20 and beyond. */
std::vector<double> cheb_coeffs(int k);

/* ((t - sqrt(t^2-1))^k + (t + sqrt(t^2-1))^k)/2 for t >= 1; equals
 * cheb_eval(k, t) there. Throws ParameterError for t < 1. */
double growth_bound(int k, double t);

/* lambda(tau, mu) = (2 tau + mu - 1) / (mu + 1); the argument shift that
 * maps [-mu, 1] onto [-1, 1]. */
double lambda_shift(double tau, double mu);

/* S_k(t) = T_k(lambda(t, mu)); bounded by 1 on [-mu, 1]. */
double s_eval(int k, double mu, double t);

/* Monomial coefficients of S_k(t) = T_k((2 t + mu - 1)/(mu + 1)). */
std::vector<double> s_coeffs(int k, double mu);

/* Number of monomials x^m with |m| <= k matching the parity filter
 * (full: all degrees; even/odd: matching degrees only, even includes 0).
 * Throws ResourceError if the count exceeds 2^63 - 1. */
std::uint64_t lifted_dim(int d, int k, Parity parity);

struct Feasibility {
    bool ok = false;
    double margin = 0.0; // 2*T_k(lambda) - 6*sqrt(lifted_dim), linear scale
};

/* The k-vs-tau test. Binomial sums are exact 64-bit integers with overflow
 * checking; past 2^63 the comparison switches to log space (margin then
 * reports +/-inf as a sign). Parity refinement requires mu = 1. */
Feasibility feasibility(int d, int k, double tau, double mu, Parity parity);

struct ApproxParams {
    int d = 0;
    int k = 0;
    double tau = 0.0;
    double mu = 1.0;
    double lambda = 0.0;
    Parity parity = Parity::full;
    std::uint64_t lifted_dim_value = 0;
    std::uint64_t vertex_bound = 0; // 8 * lifted_dim_value
};

/* Smallest k <= 64 whose feasibility test passes at (tau, mu); parity
 * refinement is applied automatically when mu = 1 (k even -> even lift,
 * k odd -> odd lift). Throws ParameterError("increase tau") if no k works. */
ApproxParams min_k(int d, double tau, double mu);

/* The tau at which feasibility crosses from false to true for fixed k,
 * located by bisection to 1e-9 and clamped at 1 + 1e-12. The result is
 * always on the feasible side. */
double max_tau(int d, int k, double mu);

} // namespace thrifty
