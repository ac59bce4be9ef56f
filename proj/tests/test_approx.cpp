#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <thrifty/approx.hpp>
#include <thrifty/bodies.hpp>
#include <thrifty/errors.hpp>
#include <thrifty/verify.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

using namespace thrifty;

namespace {

std::vector<std::vector<double>> sorted_rows(const Matrix& m) {
    std::vector<std::vector<double>> rows;
    for (std::size_t r = 0; r < m.rows(); ++r)
        rows.emplace_back(m.row(r), m.row(r) + m.cols());
    std::sort(rows.begin(), rows.end());
    return rows;
}

} // namespace

TEST_CASE("cross polytope reproduces itself") {
    const BodySample body = generate(BodyKind::cross_polytope, 3, 0, 0);
    const ApproxResult res = approximate_with_degree(body, 2);
    CHECK(res.parity == Parity::even);
    CHECK(res.mu == 1.0);
    CHECK(res.lifted_dim_value == 7);
    CHECK(res.dim == 3);
    CHECK(sorted_rows(res.vertices) == sorted_rows(body.points()));
    const Certificate cert = achieved_factor(body, res.vertices);
    CHECK(cert.containment_ok);
    CHECK(cert.achieved_tau == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(res.guaranteed_tau == max_tau(3, 2, 1.0));
}

TEST_CASE("square reproduces itself") {
    const BodySample body = generate(BodyKind::cube, 2, 0, 0);
    const ApproxResult res = approximate_with_degree(body, 2);
    CHECK(res.vertices.rows() == 4);
    CHECK(sorted_rows(res.vertices) == sorted_rows(body.points()));
    CHECK(achieved_factor(body, res.vertices).achieved_tau ==
          doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("ball sample stays under the certified factor") {
    const BodySample body = generate(BodyKind::ball_sample, 3, 100, 17);
    const ApproxResult res = approximate_with_degree(body, 3);
    CHECK(res.parity == Parity::odd);
    CHECK(res.lifted_dim_value == 13);
    // on the unit sphere x_i * |x|^2 == x_i, so three of the thirteen lifted
    // coordinates are dependent: the span is the harmonics of degree 1 and 3
    CHECK(res.lifted_rank == 10);
    CHECK(res.vertices.rows() <= 104); // 8 * lifted dimension
    CHECK(res.john_residual <= 1e-6);
    CHECK(res.bss_ratio <= 9.0 + 1e-4);
    CHECK(res.guaranteed_tau == max_tau(3, 3, 1.0));

    const Certificate cert = achieved_factor(body, res.vertices);
    CHECK(cert.containment_ok);
    CHECK(cert.achieved_tau <= res.guaranteed_tau + 1e-9);
    CHECK(cert.achieved_tau >= 1.0);
}

TEST_CASE("simplex runs through the asymmetric path") {
    const BodySample body = generate(BodyKind::simplex, 3, 0, 0);
    const ApproxResult res = approximate_with_degree(body, 2);
    CHECK(res.parity == Parity::full);
    CHECK(res.mu >= 3.0 - 1e-9);
    CHECK(res.mu <= 3.0 * (1.0 + 1e-6));
    CHECK(res.lifted_dim_value == 10);
    CHECK(res.vertices.rows() <= 80);

    const Certificate cert = achieved_factor(body, res.vertices);
    CHECK(cert.containment_ok);
    CHECK(cert.achieved_tau <= res.guaranteed_tau + 1e-9);
    // reflected copies appear: some vertex is a negatively scaled sample
    bool any_reflected = false;
    for (std::size_t r = 0; r < res.vertices.rows() && !any_reflected; ++r) {
        std::vector<double> v(res.vertices.row(r), res.vertices.row(r) + 3);
        for (std::size_t i = 0; i < body.size() && !any_reflected; ++i) {
            bool match = true;
            for (std::size_t c = 0; c < 3; ++c)
                if (std::abs(v[c] + body.point(i)[c] / res.mu) > 1e-12) match = false;
            any_reflected = match;
        }
    }
    CHECK(any_reflected);
}

TEST_CASE("negating a symmetric body keeps the vertex set") {
    const BodySample cross = generate(BodyKind::cross_polytope, 4, 0, 0);
    Matrix neg = cross.points();
    for (std::size_t i = 0; i < neg.rows() * neg.cols(); ++i) neg.data()[i] = -neg.data()[i];
    const BodySample flipped("flipped", 4, neg, true);
    const ApproxResult a = approximate_with_degree(cross, 2);
    const ApproxResult b = approximate_with_degree(flipped, 2);
    CHECK(sorted_rows(a.vertices) == sorted_rows(b.vertices));
}

TEST_CASE("deterministic modulo timings") {
    const BodySample body = generate(BodyKind::random_symmetric, 3, 30, 8);
    const ApproxResult a = approximate_with_degree(body, 2);
    const ApproxResult b = approximate_with_degree(body, 2);
    CHECK(a.vertices == b.vertices);
    CHECK(a.chosen_indices == b.chosen_indices);
    CHECK(a.guaranteed_tau == b.guaranteed_tau);
    CHECK(a.bss_ratio == b.bss_ratio);
}

TEST_CASE("degree from a target factor") {
    const BodySample cross = generate(BodyKind::cross_polytope, 3, 0, 0);
    const ApproxResult res = approximate_to_tau(cross, 2.0);
    CHECK(res.k == 3);
    CHECK(res.guaranteed_tau <= 2.0);
    CHECK(res.k == min_k(3, 2.0, 1.0).k);

    const BodySample simplex = generate(BodyKind::simplex, 3, 0, 0);
    const ApproxResult loose = approximate_to_tau(simplex, 10.0);
    CHECK(loose.k == 2);
    CHECK(loose.guaranteed_tau <= 10.0);

    CHECK_THROWS_AS(approximate_to_tau(cross, 1.0), ParameterError);
    CHECK_THROWS_AS(approximate_to_tau(cross, 0.5), ParameterError);
}

TEST_CASE("lifted dimension cap") {
    const BodySample body = generate(BodyKind::ball_sample, 6, 40, 1);
    ApproxOptions opts;
    opts.lifted_dim_cap = 100;
    CHECK_THROWS_AS(approximate_with_degree(body, 6, opts), ResourceError); // dim 610
    opts.lifted_dim_cap = 610;
    CHECK_NOTHROW(approximate_with_degree(body, 6, opts));
}

TEST_CASE("result json round trip") {
    const BodySample body = generate(BodyKind::ball_sample, 3, 20, 4);
    ApproxResult res = approximate_with_degree(body, 2);
    res.achieved_tau = achieved_factor(body, res.vertices).achieved_tau;

    const std::string text = result_to_json_string(res);
    const ApproxResult back = parse_result_json(text);
    CHECK(back.body_name == res.body_name);
    CHECK(back.dim == res.dim);
    CHECK(back.k == res.k);
    CHECK(back.parity == res.parity);
    CHECK(back.mu == res.mu);
    CHECK(back.guaranteed_tau == res.guaranteed_tau);
    REQUIRE(back.achieved_tau.has_value());
    CHECK(*back.achieved_tau == *res.achieved_tau);
    CHECK(back.lifted_dim_value == res.lifted_dim_value);
    CHECK(back.lifted_rank == res.lifted_rank);
    CHECK(back.vertices == res.vertices);
    CHECK(back.chosen_indices == res.chosen_indices);

    // a result that was never verified round-trips the null
    ApproxResult fresh = approximate_with_degree(body, 2);
    const ApproxResult fresh_back = parse_result_json(result_to_json_string(fresh));
    CHECK_FALSE(fresh_back.achieved_tau.has_value());
}

TEST_CASE("result json rejects tampering") {
    const BodySample body = generate(BodyKind::cross_polytope, 2, 0, 0);
    const ApproxResult res = approximate_with_degree(body, 2);
    const std::string text = result_to_json_string(res);

    CHECK_THROWS_AS(parse_result_json("{"), ContractViolation);
    CHECK_THROWS_AS(parse_result_json("[]"), ContractViolation);

    auto mutate = [&](const std::string& from, const std::string& to) {
        std::string copy = text;
        const auto pos = copy.find(from);
        REQUIRE(pos != std::string::npos);
        copy.replace(pos, from.size(), to);
        return copy;
    };
    CHECK_THROWS_AS(parse_result_json(mutate("\"schema\": 1", "\"schema\": 2")),
                    ContractViolation);
    CHECK_THROWS_AS(parse_result_json(mutate("\"parity\": \"even\"", "\"parity\": \"weird\"")),
                    ContractViolation);
    CHECK_THROWS_AS(parse_result_json(mutate("\"vertex_count\"", "\"vertex_tally\"")),
                    ContractViolation);
}
