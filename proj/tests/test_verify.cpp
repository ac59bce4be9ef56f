#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <thrifty/bodies.hpp>
#include <thrifty/errors.hpp>
#include <thrifty/rng.hpp>
#include <thrifty/verify.hpp>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "oracles.hpp"

using namespace thrifty;

namespace {

Matrix scaled(const Matrix& m, double f) {
    Matrix out = m;
    for (std::size_t i = 0; i < out.rows() * out.cols(); ++i) out.data()[i] *= f;
    return out;
}

std::set<std::vector<double>> row_set(const Matrix& m) {
    std::set<std::vector<double>> s;
    for (std::size_t r = 0; r < m.rows(); ++r)
        s.insert(std::vector<double>(m.row(r), m.row(r) + m.cols()));
    return s;
}

} // namespace

TEST_CASE("identical polytope certifies factor one") {
    const BodySample body = generate(BodyKind::cube, 3, 0, 0);
    const Certificate cert = achieved_factor(body, body.points());
    CHECK(cert.achieved_tau == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(cert.witness_index == 0);
    CHECK(cert.containment_ok);
}

TEST_CASE("cross polytope inside the square") {
    // body = square, P = cross polytope: the corner (1,1) needs dilation 2
    const BodySample square = generate(BodyKind::cube, 2, 0, 0);
    const Matrix cross = generate(BodyKind::cross_polytope, 2, 0, 0).points();
    const Certificate cert = achieved_factor(square, cross);
    CHECK(cert.achieved_tau == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(cert.witness_index == 0);
    CHECK(cert.containment_ok); // +-e_i are hull points of the square

    // the other way around the vertices poke out of the body
    const BodySample cross_body = generate(BodyKind::cross_polytope, 2, 0, 0);
    const Certificate rev = achieved_factor(cross_body, square.points());
    CHECK_FALSE(rev.containment_ok);
    CHECK(rev.achieved_tau <= 1.0 + 1e-9);
}

TEST_CASE("shrunk polytope doubles the factor") {
    const BodySample body = generate(BodyKind::cross_polytope, 3, 0, 0);
    const Certificate cert = achieved_factor(body, scaled(body.points(), 0.5));
    CHECK(cert.achieved_tau == doctest::Approx(2.0).epsilon(1e-9));
    const Certificate grown = achieved_factor(body, scaled(body.points(), 2.0));
    CHECK(grown.achieved_tau == doctest::Approx(0.5).epsilon(1e-9));
    CHECK_FALSE(grown.containment_ok);
}

TEST_CASE("deleting a vertex cannot shrink the factor") {
    const BodySample body = generate(BodyKind::ball_sample, 3, 40, 6);
    Matrix all = body.points();
    Matrix fewer(all.rows() - 2, 3);
    for (std::size_t r = 0; r < fewer.rows(); ++r)
        for (std::size_t c = 0; c < 3; ++c) fewer(r, c) = all(r + 2, c);
    const double tau_all = achieved_factor(body, all).achieved_tau;
    const double tau_fewer = achieved_factor(body, fewer).achieved_tau;
    CHECK(tau_all == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(tau_fewer >= tau_all - 1e-9);
}

TEST_CASE("matches the facet enumeration oracle") {
    for (std::size_t dim : {2ul, 3ul}) {
        for (std::uint64_t seed : {1ull, 2ull, 3ull, 4ull, 5ull}) {
            const BodySample body = generate(BodyKind::random_symmetric, dim, 16, seed);
            // P = the first 2*(dim+1) sample points (kept symmetric)
            Matrix sub(2 * (dim + 1), dim);
            for (std::size_t r = 0; r < sub.rows(); ++r)
                for (std::size_t c = 0; c < dim; ++c) sub(r, c) = body.point(r)[c];
            const double lp_tau = achieved_factor(body, sub).achieved_tau;
            const double facet_tau = oracles::facet_ratio(body.points(), sub);
            CHECK(lp_tau == doctest::Approx(facet_tau).epsilon(1e-6));
        }
    }
}

TEST_CASE("direction ratios") {
    const BodySample body = generate(BodyKind::cube, 3, 0, 0);
    const DirectionRatios same = direction_ratios(body, body.points(), 200, 9);
    CHECK(same.n_dirs == 200);
    CHECK(same.seed == 9);
    CHECK(same.max_ratio == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(same.min_ratio == doctest::Approx(1.0).epsilon(1e-9));
    REQUIRE(same.histogram.size() == 16);
    std::size_t total = 0;
    for (std::size_t h : same.histogram) total += h;
    CHECK(total == 200);

    // sampled ratios never exceed the exact factor
    const Matrix half = scaled(body.points(), 0.5);
    const Certificate cert = achieved_factor(body, half);
    const DirectionRatios dirs = direction_ratios(body, half, 500, 123);
    CHECK(dirs.max_ratio <= cert.achieved_tau + 1e-6);
    CHECK(dirs.max_ratio == doctest::Approx(2.0).epsilon(1e-9)); // every ratio is 2 here
    CHECK(dirs.min_ratio >= 1.0 - 1e-9);

    // deterministic for a fixed seed
    const DirectionRatios again = direction_ratios(body, half, 500, 123);
    CHECK(again.max_ratio == dirs.max_ratio);
    CHECK(again.histogram == dirs.histogram);

    CHECK_THROWS_AS(direction_ratios(body, half, 0, 1), ParameterError);
}

TEST_CASE("baseline net achieves the target factor") {
    const BodySample body = generate(BodyKind::ball_sample, 3, 60, 21);
    for (double tau : {1.5, 1.2, 1.05}) {
        const Matrix net = baseline_net(body, tau, 5);
        const Certificate cert = achieved_factor(body, net);
        CHECK(cert.achieved_tau <= tau + 1e-9);
        CHECK(cert.containment_ok);
        // rows are body points, closed under negation for symmetric bodies
        const auto bodyset = row_set(body.points());
        const auto netset = row_set(net);
        for (const auto& row : netset) {
            CHECK(bodyset.count(row) == 1);
            std::vector<double> neg(row.size());
            for (std::size_t c = 0; c < row.size(); ++c) neg[c] = -row[c];
            CHECK(netset.count(neg) == 1);
        }
    }
    // tighter targets need at least as many vertices
    CHECK(baseline_net(body, 1.05, 5).rows() >= baseline_net(body, 1.5, 5).rows());
    CHECK_THROWS_AS(baseline_net(body, 1.0, 5), ParameterError);
    CHECK_THROWS_AS(baseline_net(body, 0.9, 5), ParameterError);
}

TEST_CASE("baseline net on an asymmetric body") {
    const BodySample simplex = generate(BodyKind::simplex, 3, 0, 0);
    const Matrix net = baseline_net(simplex, 1.5, 3);
    const Certificate cert = achieved_factor(simplex, net);
    CHECK(cert.achieved_tau <= 1.5 + 1e-9);
    CHECK(net.rows() <= simplex.size());
}

TEST_CASE("certificate json") {
    const BodySample body = generate(BodyKind::cube, 2, 0, 0);
    Certificate cert = achieved_factor(body, body.points());
    const DirectionRatios dirs = direction_ratios(body, body.points(), 50, 7);
    cert.direction_ratio_max = dirs.max_ratio;
    const std::string text = certificate_to_json_string(cert, dirs);
    for (const char* key : {"\"achieved_tau\"", "\"witness_index\"", "\"containment_ok\"",
                            "\"direction_ratio_max\"", "\"n_dirs\"", "\"seed\""})
        CHECK(text.find(key) != std::string::npos);
}

TEST_CASE("verifier rejects polytopes that miss directions") {
    // P lives in a proper subspace: some body points fall outside its cone
    const BodySample body = generate(BodyKind::cube, 2, 0, 0);
    const Matrix flat(2, 2, {1.0, 0.0, -1.0, 0.0});
    CHECK_THROWS_AS(achieved_factor(body, flat), CertificationError);
}
