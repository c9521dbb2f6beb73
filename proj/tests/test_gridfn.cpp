#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "test_support.hpp"

using namespace warptrend;
using wt_test::kPi;

TEST_CASE("grid spans the unit interval uniformly") {
    for (std::size_t m : {2u, 3u, 101u, 1001u}) {
        const Grid g(m);
        CHECK(g[0] == 0.0);
        CHECK(g[m - 1] == 1.0);
        for (std::size_t j = 1; j < m; ++j)
            CHECK(std::abs((g[j] - g[j - 1]) - g.spacing()) <= 1e-12 * g.spacing() + 1e-15);
    }
    CHECK_THROWS(Grid(1));
}

TEST_CASE("grid functions reject non-finite values and wrong lengths") {
    const Grid g(5);
    CHECK_THROWS(GridFunction(g, {0, 1, 2}));
    CHECK_THROWS(GridFunction(g, {0, 1, std::nan(""), 3, 4}));
    CHECK_THROWS(GridFunction(g, {0, 1, INFINITY, 3, 4}));
}

TEST_CASE("inner product examples") {
    const Grid g101(101), g1001(1001);
    const auto one = GridFunction::constant(g101, 1.0);
    CHECK(inner_product(one, one) == doctest::Approx(1.0).epsilon(1e-14));
    const auto t = GridFunction::sample(g1001, [](double x) { return x; });
    CHECK(std::abs(inner_product(t, GridFunction::constant(g1001, 1.0)) - 0.5) <= 1e-6);
    const auto s = GridFunction::sample(g1001, [](double x) { return std::sin(2 * kPi * x); });
    const auto c = GridFunction::sample(g1001, [](double x) { return std::cos(2 * kPi * x); });
    CHECK(std::abs(inner_product(s, c)) <= 1e-6);
    CHECK_THROWS_AS(inner_product(one, t), GridMismatch);
}

TEST_CASE("norm examples") {
    const Grid g(1001);
    CHECK(norm(GridFunction::zeros(g)) == 0.0);
    CHECK(std::abs(norm(GridFunction::constant(g, -2.5)) - 2.5) <= 1e-9);
    const auto s = GridFunction::sample(g, [](double x) { return std::sqrt(2.0) * std::sin(kPi * x); });
    CHECK(std::abs(norm(s) - 1.0) <= 1e-5);
}

TEST_CASE("eval_at interpolates and checks its domain") {
    const Grid g(201);
    const auto t = GridFunction::sample(g, [](double x) { return x; });
    CHECK(eval_at(t, 0.25) == doctest::Approx(0.25).epsilon(1e-14));
    const auto s = GridFunction::sample(g, [](double x) { return std::sin(2 * kPi * x); });
    for (std::size_t j = 0; j < g.size(); j += 17) CHECK(eval_at(s, g[j]) == s[j]);
    CHECK(std::abs(eval_at(s, 0.125) - std::sin(kPi / 4)) <= 1e-3);
    CHECK_THROWS_AS(eval_at(s, -0.01), std::domain_error);
    CHECK_THROWS_AS(eval_at(s, 1.0001), std::domain_error);
}

TEST_CASE("derivative examples") {
    const Grid g(1001);
    const auto c = GridFunction::constant(g, 3.0);
    const auto dc = derivative(c);
    for (double v : dc.values()) CHECK(std::abs(v) <= 1e-9);
    const auto sq = GridFunction::sample(g, [](double x) { return x * x; });
    const auto dsq = derivative(sq);
    for (std::size_t j = 0; j < g.size(); ++j) CHECK(std::abs(dsq[j] - 2 * g[j]) <= 1e-6);
    const auto s = GridFunction::sample(g, [](double x) { return std::sin(2 * kPi * x); });
    const auto ds = derivative(s);
    for (std::size_t j = 0; j < g.size(); ++j)
        CHECK(std::abs(ds[j] - 2 * kPi * std::cos(2 * kPi * g[j])) <= 1e-4);
    const auto lin = GridFunction::sample(g, [](double x) { return -0.7 + 4.2 * x; });
    const auto dlin = derivative(lin);
    for (double v : dlin.values()) CHECK(std::abs(v - 4.2) <= 1e-9);
    CHECK_THROWS(derivative(GridFunction::zeros(Grid(2))));
}

TEST_CASE("mean_function examples") {
    const Grid g(101);
    std::mt19937_64 rng(7);
    const auto f = wt_test::random_smooth(g, rng);
    const std::vector<GridFunction> pair{f, f * -1.0};
    const auto mp = mean_function(pair);
    for (double v : mp.values()) CHECK(v == 0.0);
    const std::vector<GridFunction> single{f};
    CHECK(std::equal(f.values().begin(), f.values().end(), mean_function(single).values().begin()));
    const std::vector<GridFunction> copies(7, f);
    const auto mc = mean_function(copies);
    for (std::size_t j = 0; j < g.size(); ++j) CHECK(mc[j] == f[j]);
    const std::vector<GridFunction> pw{GridFunction::sample(g, [](double x) { return x; }),
                                       GridFunction::sample(g, [](double x) { return x * x; }),
                                       GridFunction::sample(g, [](double x) { return x * x * x; })};
    const auto m3 = mean_function(pw);
    for (std::size_t j = 0; j < g.size(); ++j) {
        const double x = g[j];
        CHECK(m3[j] == doctest::Approx((x + x * x + x * x * x) / 3).epsilon(1e-14));
    }
    CHECK_THROWS(mean_function(std::vector<GridFunction>{}));
    const std::vector<GridFunction> mixed{f, GridFunction::zeros(Grid(11))};
    CHECK_THROWS_AS(mean_function(mixed), GridMismatch);
}

TEST_CASE("resample_to_grid examples") {
    const Grid g(11);
    std::vector<double> times(g.points().begin(), g.points().end()), vals(11);
    for (std::size_t j = 0; j < 11; ++j) vals[j] = std::sin(3.0 * g[j]);
    const auto same = resample_to_grid(vals, times, g);
    for (std::size_t j = 0; j < 11; ++j) CHECK(same[j] == doctest::Approx(vals[j]).epsilon(1e-14));

    const std::vector<double> t2{0, 2}, v2{0, 2};
    const auto r = resample_to_grid(v2, t2, Grid(3));
    CHECK(r[0] == 0.0);
    CHECK(r[1] == doctest::Approx(1.0));
    CHECK(r[2] == 2.0);

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> ts{0.0, 1.0};
    while (ts.size() < 50) ts.push_back(u(rng));
    std::sort(ts.begin(), ts.end());
    std::vector<double> ys;
    double gap = 0.0;
    for (std::size_t k = 0; k < ts.size(); ++k) {
        ys.push_back(std::sin(kPi * ts[k]));
        if (k) gap = std::max(gap, ts[k] - ts[k - 1]);
    }
    const Grid target(201);
    const auto rs = resample_to_grid(ys, ts, target);
    double err = 0.0;
    for (std::size_t j = 0; j < target.size(); ++j)
        err = std::max(err, std::abs(rs[j] - std::sin(kPi * target[j])));
    CHECK(err <= 3.0 * gap * gap);
    // linear interpolation error is at most gap^2/8 times max |f''|
    CHECK(err <= kPi * kPi / 8.0 * gap * gap);

    const std::vector<double> bad_t{0, 0.5, 0.4, 1}, bad_v{1, 2, 3, 4};
    CHECK_THROWS(resample_to_grid(bad_v, bad_t, target));
    const std::vector<double> short_v{1, 2, 3};
    CHECK_THROWS(resample_to_grid(short_v, bad_t, target));
}

TEST_CASE("inner product is symmetric and bilinear on random triples") {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> n01(0.0, 1.0);
    const Grid g(257);
    for (int trial = 0; trial < 50; ++trial) {
        const auto a = wt_test::random_smooth(g, rng), b = wt_test::random_smooth(g, rng),
                   c = wt_test::random_smooth(g, rng);
        const double s = n01(rng), r = n01(rng);
        const double ab = inner_product(a, b), ba = inner_product(b, a);
        CHECK(std::abs(ab - ba) <= 1e-10 * (std::abs(ab) + 1e-300) + 1e-14);
        const double lhs = inner_product(a * s + b * r, c);
        const double rhs = s * inner_product(a, c) + r * inner_product(b, c);
        const double scale = std::abs(s) * norm(a) * norm(c) + std::abs(r) * norm(b) * norm(c);
        CHECK(std::abs(lhs - rhs) <= 1e-10 * scale);
    }
}

TEST_CASE("norm vanishes only on the zero function") {
    const Grid g(50);
    CHECK(norm(GridFunction::zeros(g)) == 0.0);
    for (std::size_t j = 0; j < g.size(); ++j) {
        std::vector<double> v(g.size(), 0.0);
        v[j] = 1e-150;
        CHECK(norm(GridFunction(g, v)) > 0.0);
    }
}
