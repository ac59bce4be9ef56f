#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <thrifty/bodies.hpp>
#include <thrifty/errors.hpp>

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

using namespace thrifty;

namespace {

double row_norm(const BodySample& body, std::size_t i) {
    double s = 0.0;
    for (std::size_t c = 0; c < body.dim(); ++c) s += body.point(i)[c] * body.point(i)[c];
    return std::sqrt(s);
}

bool rows_negate(const BodySample& body, std::size_t i, std::size_t j) {
    for (std::size_t c = 0; c < body.dim(); ++c)
        if (body.point(i)[c] != -body.point(j)[c]) return false;
    return true;
}

} // namespace

TEST_CASE("cube generator") {
    const BodySample cube = generate(BodyKind::cube, 3, 0, 0);
    CHECK(cube.name() == "cube_d3");
    CHECK(cube.dim() == 3);
    CHECK(cube.size() == 8);
    CHECK(cube.symmetric());
    for (std::size_t i = 0; i < cube.size(); ++i)
        for (std::size_t c = 0; c < 3; ++c) CHECK(std::abs(cube.point(i)[c]) == 1.0);
    CHECK_THROWS_AS(generate(BodyKind::cube, 21, 0, 0), ParameterError);
}

TEST_CASE("cross polytope generator") {
    const BodySample cross = generate(BodyKind::cross_polytope, 4, 0, 0);
    CHECK(cross.name() == "cross_polytope_d4");
    CHECK(cross.size() == 8);
    CHECK(cross.symmetric());
    for (std::size_t i = 0; i < cross.size(); ++i) {
        CHECK(row_norm(cross, i) == 1.0);
        CHECK(rows_negate(cross, 2 * (i / 2), 2 * (i / 2) + 1));
    }
}

TEST_CASE("simplex generator") {
    const BodySample simplex = generate(BodyKind::simplex, 3, 0, 0);
    CHECK(simplex.name() == "simplex_d3");
    CHECK(simplex.size() == 4);
    CHECK_FALSE(simplex.symmetric());
    // unit circumradius, centroid at the origin, equal pairwise angles
    for (std::size_t i = 0; i < 4; ++i)
        CHECK(row_norm(simplex, i) == doctest::Approx(1.0).epsilon(1e-12));
    for (std::size_t c = 0; c < 3; ++c) {
        double mean = 0.0;
        for (std::size_t i = 0; i < 4; ++i) mean += simplex.point(i)[c];
        CHECK(std::abs(mean) <= 1e-12);
    }
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j) {
            double dot = 0.0;
            for (std::size_t c = 0; c < 3; ++c) dot += simplex.point(i)[c] * simplex.point(j)[c];
            CHECK(dot == doctest::Approx(-1.0 / 3.0).epsilon(1e-12));
        }
}

TEST_CASE("sampled generators") {
    const BodySample ball = generate(BodyKind::ball_sample, 3, 10, 5);
    CHECK(ball.name() == "ball_sample_d3_n10_s5");
    CHECK(ball.size() == 10);
    CHECK(ball.symmetric());
    for (std::size_t i = 0; i < 5; ++i) {
        CHECK(row_norm(ball, 2 * i) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(rows_negate(ball, 2 * i, 2 * i + 1));
    }

    const BodySample rnd = generate(BodyKind::random_symmetric, 4, 12, 9);
    CHECK(rnd.size() == 12);
    CHECK(rnd.symmetric());
    for (std::size_t i = 0; i < 6; ++i) CHECK(rows_negate(rnd, 2 * i, 2 * i + 1));

    const BodySample ell = generate(BodyKind::ellipsoid_sample, 3, 20, 11);
    CHECK(ell.size() == 20);
    CHECK(ell.symmetric());
    double lo = 1e300, hi = 0.0;
    for (std::size_t i = 0; i < 10; ++i) {
        CHECK(rows_negate(ell, 2 * i, 2 * i + 1));
        lo = std::min(lo, row_norm(ell, 2 * i));
        hi = std::max(hi, row_norm(ell, 2 * i));
    }
    CHECK(hi > lo + 1e-6); // genuinely anisotropic

    // same seed, same body; different seed, different points
    CHECK(generate(BodyKind::ball_sample, 3, 10, 5).points() == ball.points());
    CHECK_FALSE(generate(BodyKind::ball_sample, 3, 10, 6).points() == ball.points());

    CHECK_THROWS_AS(generate(BodyKind::ball_sample, 3, 9, 5), ParameterError);
    CHECK_THROWS_AS(generate(BodyKind::ball_sample, 3, 4, 5), ParameterError);
    CHECK_THROWS_AS(generate(BodyKind::ball_sample, 0, 10, 5), ParameterError);
}

TEST_CASE("kind names") {
    for (BodyKind kind : {BodyKind::ball_sample, BodyKind::cube, BodyKind::cross_polytope,
                          BodyKind::simplex, BodyKind::random_symmetric,
                          BodyKind::ellipsoid_sample})
        CHECK(body_kind_from_name(body_kind_name(kind)) == kind);
    CHECK_THROWS_AS(body_kind_from_name("donut"), ParameterError);
}

TEST_CASE("support function") {
    const BodySample cube = generate(BodyKind::cube, 2, 0, 0);
    CHECK(support(cube, {1.0, 1.0}) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(support(cube, {-3.0, 0.5}) == doctest::Approx(3.5).epsilon(1e-15));
    const BodySample cross = generate(BodyKind::cross_polytope, 3, 0, 0);
    CHECK(support(cross, {1.0, 2.0, 3.0}) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK_THROWS_AS(support(cube, {1.0, 2.0, 3.0}), ContractViolation);
}

TEST_CASE("gauge function") {
    const BodySample cube = generate(BodyKind::cube, 2, 0, 0);
    CHECK(gauge(cube, {1.0, 1.0}) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(gauge(cube, {0.5, -0.25}) == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(gauge(cube, {0.0, 0.0}) == doctest::Approx(0.0).epsilon(1e-12));

    const BodySample cross = generate(BodyKind::cross_polytope, 3, 0, 0);
    CHECK(gauge(cross, {0.25, 0.25, 0.25}) == doctest::Approx(0.75).epsilon(1e-9));
    // positive homogeneity
    CHECK(gauge(cross, {0.5, 0.5, 0.5}) == doctest::Approx(1.5).epsilon(1e-9));

    // every sample point has gauge <= 1, and vertices achieve it
    const BodySample ell = generate(BodyKind::ellipsoid_sample, 3, 14, 3);
    for (std::size_t i = 0; i < ell.size(); ++i) {
        std::vector<double> p(ell.point(i), ell.point(i) + 3);
        CHECK(gauge(ell, p) <= 1.0 + 1e-9);
    }
    CHECK_THROWS_AS(gauge(cube, {1.0}), ContractViolation);
}

TEST_CASE("symmetry coefficient") {
    CHECK(symmetry_mu(generate(BodyKind::cube, 3, 0, 0)).mu == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(symmetry_mu(generate(BodyKind::cross_polytope, 4, 0, 0)).mu ==
          doctest::Approx(1.0).epsilon(1e-9));
    CHECK(symmetry_mu(generate(BodyKind::simplex, 2, 0, 0)).mu ==
          doctest::Approx(2.0).epsilon(1e-6));
    CHECK(symmetry_mu(generate(BodyKind::simplex, 3, 0, 0)).mu ==
          doctest::Approx(3.0).epsilon(1e-6));

    // shifted square [-1, 2]^2: reflecting (2, 2) needs dilation 2
    const BodySample square("square", 2,
                            Matrix(4, 2, {2.0, 2.0, 2.0, -1.0, -1.0, 2.0, -1.0, -1.0}), false);
    const SymmetryCoefficient sym = symmetry_mu(square);
    CHECK(sym.mu == doctest::Approx(2.0).epsilon(1e-9));
    std::vector<double> neg(2);
    for (std::size_t c = 0; c < 2; ++c) neg[c] = -square.point(sym.witness)[c];
    CHECK(gauge(square, neg) == doctest::Approx(sym.mu).epsilon(1e-9));
}

TEST_CASE("sample validation") {
    // points on a line do not span the plane
    CHECK_THROWS_WITH_AS(BodySample("line", 2, Matrix(3, 2, {1, 0, -1, 0, 2, 0}), false),
                         doctest::Contains("span"), ContractViolation);
    // symmetric flag demands exact closure under negation
    CHECK_THROWS_WITH_AS(BodySample("open", 2, Matrix(3, 2, {1, 0, 0, 1, -1, 0}), true),
                         doctest::Contains("negation"), ContractViolation);
    // hull strictly to one side of the origin
    CHECK_THROWS_WITH_AS(BodySample("shifted", 2, Matrix(3, 2, {1, 0, 2, 0, 1, 1}), false),
                         doctest::Contains("interior"), ContractViolation);
    // width mismatch, too few points, non-finite coordinates
    CHECK_THROWS_AS(BodySample("wide", 2, Matrix(3, 3, {1, 0, 0, 0, 1, 0, 0, 0, 1}), false),
                    ContractViolation);
    CHECK_THROWS_AS(BodySample("thin", 2, Matrix(2, 2, {1, 0, 0, 1}), false), ContractViolation);
    const double nan = std::nan("");
    CHECK_THROWS_AS(BodySample("nan", 1, Matrix(2, 1, {nan, 1.0}), false), ContractViolation);
    CHECK_THROWS_AS(BodySample("flat", 0, Matrix(2, 0), false), ContractViolation);
}

TEST_CASE("json round trip") {
    const BodySample body = generate(BodyKind::random_symmetric, 3, 8, 77);
    const std::string text = body_to_json_string(body);
    const BodySample back = parse_body_json(text);
    CHECK(back.name() == body.name());
    CHECK(back.dim() == body.dim());
    CHECK(back.symmetric() == body.symmetric());
    CHECK(back.points() == body.points());
    CHECK(body_to_json_string(back) == text);
}

TEST_CASE("json rejects malformed input") {
    CHECK_THROWS_AS(parse_body_json("{"), ContractViolation);
    CHECK_THROWS_AS(parse_body_json("[]"), ContractViolation);
    CHECK_THROWS_AS(parse_body_json(R"({"name":"x","dim":2,"symmetric":false})"),
                    ContractViolation);
    CHECK_THROWS_AS(
        parse_body_json(R"({"name":"x","dim":2,"symmetric":false,"points":[[1,0],[0]]})"),
        ContractViolation);
    CHECK_THROWS_AS(
        parse_body_json(R"({"name":"x","dim":2,"symmetric":false,"points":[[1,"a"],[0,1]]})"),
        ContractViolation);
    CHECK_THROWS_AS(
        parse_body_json(R"({"name":"x","dim":1,"symmetric":false,"points":[[1],[2],[3]]})"),
        ContractViolation); // origin not interior
}

TEST_CASE("file round trip") {
    const BodySample body = generate(BodyKind::cube, 2, 0, 0);
    const std::string path = "bodies_test_tmp.json";
    save_body(body, path);
    const BodySample back = load_body(path);
    CHECK(back.points() == body.points());
    CHECK(back.name() == body.name());
    std::remove(path.c_str());
    CHECK_THROWS_AS(load_body("no_such_file_anywhere.json"), ParameterError);
}
