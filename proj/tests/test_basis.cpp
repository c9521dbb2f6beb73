#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "test_support.hpp"
#include "warptrend/basis.hpp"

using namespace warptrend;
using wt_test::kPi;

TEST_CASE("raw elements follow the listed families") {
    const Grid g(101);
    const auto c1 = raw_basis_element(BasisFamily::Cosine, 1, g);
    const auto l1 = raw_basis_element(BasisFamily::ShiftedLegendre, 1, g);
    for (double v : c1.values()) CHECK(v == 1.0);
    for (double v : l1.values()) CHECK(v == 1.0);
    const auto l2 = raw_basis_element(BasisFamily::ShiftedLegendre, 2, g);
    for (std::size_t j = 0; j < g.size(); ++j) CHECK(l2[j] == doctest::Approx((2 * g[j] - 1) / 3).epsilon(1e-13));
    const auto f2 = raw_basis_element(BasisFamily::Fourier, 2, g);
    const auto f3 = raw_basis_element(BasisFamily::Fourier, 3, g);
    const auto s3 = raw_basis_element(BasisFamily::Sine, 3, g);
    const auto c3 = raw_basis_element(BasisFamily::Cosine, 3, g);
    for (std::size_t j = 0; j < g.size(); ++j) {
        const double t = g[j];
        CHECK(f2[j] == doctest::Approx(std::sqrt(2.0) * std::sin(2 * kPi * t)));
        CHECK(f3[j] == doctest::Approx(std::sqrt(2.0) * std::cos(2 * kPi * t)));
        CHECK(s3[j] == doctest::Approx(std::sqrt(2.0) * std::sin(3 * kPi * t)));
        CHECK(c3[j] == doctest::Approx(std::sqrt(2.0) * std::cos(2 * kPi * t)));
    }
    CHECK_THROWS(raw_basis_element(BasisFamily::Sine, 0, g));
}

TEST_CASE("shifted Legendre elements match the Rodrigues polynomials up to 1/(2k-1)") {
    const Grid g(41);
    const auto l3 = raw_basis_element(BasisFamily::ShiftedLegendre, 3, g);
    const auto l4 = raw_basis_element(BasisFamily::ShiftedLegendre, 4, g);
    for (std::size_t j = 0; j < g.size(); ++j) {
        const double x = 2 * g[j] - 1;
        CHECK(l3[j] == doctest::Approx(0.5 * (3 * x * x - 1) / 5).epsilon(1e-12));
        CHECK(l4[j] == doctest::Approx(0.5 * (5 * x * x * x - 3 * x) / 7).epsilon(1e-12));
    }
}

TEST_CASE("build_orthonormal examples") {
    const Grid g(1001);
    const auto fb = build_orthonormal({BasisFamily::Fourier, 3}, g);
    for (std::size_t a = 0; a < 3; ++a)
        for (std::size_t b = 0; b < 3; ++b)
            CHECK(std::abs(inner_product(fb.functions()[a], fb.functions()[b]) - (a == b ? 1.0 : 0.0)) <= 1e-8);

    const auto lb = build_orthonormal({BasisFamily::ShiftedLegendre, 2}, g);
    // trapezoid sum of (2t-1)^2 is 1/3 + 2h^2/3
    const double h = g.spacing();
    const double grid_norm = std::sqrt(1.0 / 3.0 + 2.0 * h * h / 3.0);
    for (std::size_t j = 0; j < g.size(); ++j) {
        CHECK(std::abs(lb.functions()[0][j] - 1.0) <= 1e-6);
        CHECK(std::abs(lb.functions()[1][j] - (2 * g[j] - 1) / grid_norm) <= 1e-9);
        CHECK(std::abs(lb.functions()[1][j] - std::sqrt(3.0) * (2 * g[j] - 1)) <= 2e-6);
    }
    for (BasisFamily fam : {BasisFamily::Fourier, BasisFamily::Cosine, BasisFamily::ShiftedLegendre}) {
        const auto one = build_orthonormal({fam, 1}, g);
        for (double v : one.functions()[0].values()) CHECK(std::abs(v - 1.0) <= 1e-12);
    }
}

TEST_CASE("orthonormal to 1e-8 for every family up to the default ceiling") {
    const Grid g(200);
    for (BasisFamily fam : {BasisFamily::Fourier, BasisFamily::Sine, BasisFamily::Cosine,
                            BasisFamily::ShiftedLegendre}) {
        const auto b = build_orthonormal({fam, 20}, g);
        for (std::size_t a = 0; a < b.size(); ++a)
            for (std::size_t c = 0; c <= a; ++c)
                CHECK(std::abs(inner_product(b.functions()[a], b.functions()[c]) - (a == c ? 1.0 : 0.0)) <= 1e-8);
    }
}

TEST_CASE("same span as the raw family") {
    const Grid g(301);
    const auto b = build_orthonormal({BasisFamily::ShiftedLegendre, 5}, g);
    for (int k = 1; k <= 5; ++k) {
        const auto raw = raw_basis_element(BasisFamily::ShiftedLegendre, k, g);
        CHECK(norm(project_complement(raw, b)) <= 1e-10 * norm(raw) + 1e-14);
    }
}

TEST_CASE("dependent elements are rejected") {
    // a 3-point grid cannot hold 4 independent functions
    CHECK_THROWS_AS(build_orthonormal({BasisFamily::ShiftedLegendre, 4}, Grid(3)), RankDeficientBasis);
    CHECK_THROWS(build_orthonormal({BasisFamily::Sine, 0}, Grid(10)));
    CHECK_THROWS(build_orthonormal({BasisFamily::Sine, 21}, Grid(100)));
}

TEST_CASE("project examples") {
    const Grid g(1001);
    const auto b = build_orthonormal({BasisFamily::ShiftedLegendre, 4}, g);
    const auto p = project(b.functions()[1], b);
    CHECK(norm(p - b.functions()[1]) <= 1e-8);

    const auto ortho = project_complement(GridFunction::sample(g, [](double t) { return std::sin(9 * kPi * t); }), b);
    CHECK(norm(project(ortho, b)) <= 1e-8);

    const auto cb = build_orthonormal({BasisFamily::Cosine, 2}, g);
    const auto t = GridFunction::sample(g, [](double x) { return x; });
    const double c2 = -2.0 * std::sqrt(2.0) / (kPi * kPi);
    const auto expected = GridFunction::sample(
        g, [&](double x) { return 0.5 + c2 * std::sqrt(2.0) * std::cos(kPi * x); });
    CHECK(norm(project(t, cb) - expected) <= 1e-6);
}

TEST_CASE("project_complement examples") {
    const Grid g(1001);
    const auto b = build_orthonormal({BasisFamily::ShiftedLegendre, 3}, g);
    CHECK(norm(project_complement(b.functions()[0], b)) <= 1e-8);
    const auto v = project_complement(GridFunction::sample(g, [](double t) { return std::exp(t) * std::cos(7 * t); }), b);
    CHECK(norm(project_complement(v, b) - v) <= 1e-8);

    const auto cb = build_orthonormal({BasisFamily::Cosine, 1}, g);
    const auto f = GridFunction::sample(g, [](double t) { return 1.0 + std::sin(6 * kPi * t); });
    const auto s = GridFunction::sample(g, [](double t) { return std::sin(6 * kPi * t); });
    CHECK(wt_test::sup_distance(project_complement(f, cb), s) <= 1e-6);
    for (const auto& phi : b.functions()) CHECK(std::abs(inner_product(v, phi)) <= 1e-8);
    CHECK_THROWS_AS(project(GridFunction::zeros(Grid(10)), b), GridMismatch);
}

TEST_CASE("projection properties on random inputs") {
    std::mt19937_64 rng(2024);
    const Grid g(400);
    for (BasisFamily fam : {BasisFamily::Fourier, BasisFamily::Sine, BasisFamily::Cosine,
                            BasisFamily::ShiftedLegendre}) {
        const auto small = build_orthonormal({fam, 3}, g);
        const auto large = build_orthonormal({fam, 7}, g);
        for (int trial = 0; trial < 20; ++trial) {
            const auto f = wt_test::random_smooth(g, rng, 6);
            const auto h = wt_test::random_smooth(g, rng, 6);
            const auto p = project(f, large);
            CHECK(norm(project(p, large) - p) <= 1e-9);
            const double lhs = inner_product(f, f);
            const double rhs = inner_product(p, p) + inner_product(project_complement(f, large), project_complement(f, large));
            CHECK(std::abs(lhs - rhs) <= 1e-7 * lhs);
            CHECK(std::abs(inner_product(p, project_complement(h, large))) <= 1e-8);
            CHECK(norm(project_complement(f, large)) <= norm(project_complement(f, small)) + 1e-9);
        }
    }
}
