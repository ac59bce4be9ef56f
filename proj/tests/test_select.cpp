#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <thrifty/errors.hpp>
#include <thrifty/rng.hpp>
#include <thrifty/select.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

using namespace thrifty;

namespace {

/* n symmetric pairs spanning a rank-r subspace of R^d. */
Matrix planted_rank(std::size_t pairs, std::size_t r, std::size_t d, std::uint64_t seed) {
    Rng rng(seed);
    Matrix basis(r, d);
    for (std::size_t i = 0; i < r; ++i) {
        basis(i, i) = 1.0;                     // guarantees rank r
        for (std::size_t c = r; c < d; ++c) basis(i, c) = rng.normal();
    }
    Matrix pts(2 * pairs, d);
    for (std::size_t p = 0; p < pairs; ++p) {
        std::vector<double> coef(r);
        for (auto& v : coef) v = rng.normal();
        for (std::size_t c = 0; c < d; ++c) {
            double acc = 0.0;
            for (std::size_t i = 0; i < r; ++i) acc += coef[i] * basis(i, c);
            pts(2 * p, c) = acc;
            pts(2 * p + 1, c) = -acc;
        }
    }
    return pts;
}

} // namespace

TEST_CASE("selection certificate on a planted low-rank set") {
    const std::size_t r = 4, d = 9;
    const Matrix pts = planted_rank(60, r, d, 2024);
    const SelectionCertificate cert = select_subset(pts);

    CHECK(cert.rank == r);
    CHECK(cert.chosen.size() <= 16); // ceil(4 * r)
    CHECK(std::is_sorted(cert.chosen.begin(), cert.chosen.end()));
    for (std::size_t i = 1; i < cert.chosen.size(); ++i)
        CHECK(cert.chosen[i] != cert.chosen[i - 1]);
    CHECK(cert.chosen.back() < pts.rows());
    REQUIRE(cert.weights.size() == cert.chosen.size());
    for (double w : cert.weights) CHECK(w > 0.0);

    CHECK(cert.dilution == doctest::Approx(3.0 * std::sqrt(4.0)).epsilon(1e-12));
    CHECK(cert.john_residual <= 1e-6);
    CHECK(cert.bss_ratio <= 9.0 + 1e-4);

    const double worst = empirical_max_ratio(pts, cert.chosen, 500, 5);
    CHECK(worst >= 1.0);
    CHECK(worst <= cert.dilution * (1.0 + 1e-6));
}

TEST_CASE("full-rank input") {
    const Matrix pts = planted_rank(80, 5, 5, 7);
    const SelectionCertificate cert = select_subset(pts);
    CHECK(cert.rank == 5);
    CHECK(cert.chosen.size() <= 20);
    CHECK(empirical_max_ratio(pts, cert.chosen, 400, 11) <= cert.dilution * (1.0 + 1e-6));
}

TEST_CASE("gamma controls the certified dilution") {
    const Matrix pts = planted_rank(50, 4, 6, 15);
    const SelectionCertificate loose = select_subset(pts, 9.0);
    CHECK(loose.chosen.size() <= 36);
    CHECK(loose.dilution == doctest::Approx(2.0 * std::sqrt(4.0)).epsilon(1e-12));
    CHECK(loose.bss_ratio <= 4.0 + 1e-4);
    CHECK(empirical_max_ratio(pts, loose.chosen, 300, 3) <= loose.dilution * (1.0 + 1e-6));
}

TEST_CASE("tiny inputs select everything that matters") {
    // 2r rows in rank r: the sparsifier's passthrough keeps all of them
    const Matrix pts = planted_rank(3, 3, 3, 99);
    const SelectionCertificate cert = select_subset(pts);
    CHECK(cert.rank == 3);
    CHECK(cert.chosen.size() <= 6);
    CHECK(empirical_max_ratio(pts, cert.chosen, 200, 2) <= cert.dilution * (1.0 + 1e-6));
}

TEST_CASE("deterministic") {
    const Matrix pts = planted_rank(40, 3, 7, 31);
    const SelectionCertificate a = select_subset(pts);
    const SelectionCertificate b = select_subset(pts);
    CHECK(a.chosen == b.chosen);
    CHECK(a.weights == b.weights);
    CHECK(a.bss_ratio == b.bss_ratio);
}

TEST_CASE("validation") {
    CHECK_THROWS_AS(select_subset(Matrix(0, 0)), ContractViolation);
    CHECK_THROWS_AS(select_subset(Matrix(3, 2)), ContractViolation); // all-zero rows
    const Matrix pts = planted_rank(10, 2, 4, 1);
    CHECK_THROWS_AS(empirical_max_ratio(pts, {}, 100, 1), ContractViolation);
    CHECK_THROWS_AS(empirical_max_ratio(pts, {pts.rows()}, 100, 1), ContractViolation);
    // empirical ratio of the full index set is exactly 1
    std::vector<std::size_t> all(pts.rows());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    CHECK(empirical_max_ratio(pts, all, 100, 1) == 1.0);
}
