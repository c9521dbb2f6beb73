#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <limits>
#include <random>

#include "test_support.hpp"
#include "warptrend/dpalign.hpp"

using namespace warptrend;
using wt_test::kPi;
using wt_test::sup_distance;

namespace {

struct BruteForce {
    const AlignmentProblem& problem;
    const std::vector<LatticeStep>& steps;
    double best = std::numeric_limits<double>::infinity();

    void walk(LatticeNode at, double acc) {
        const int last = problem.lattice_size() - 1;
        if (at.i == last && at.j == last) {
            best = std::min(best, acc);
            return;
        }
        for (const LatticeStep& s : steps) {
            const LatticeNode next{at.i + s.dx, at.j + s.dy};
            if (next.i > last || next.j > last) continue;
            walk(next, acc + problem.segment_cost(at, next));
        }
    }
};

double exhaustive_cost(const GridFunction& q, const GridFunction& r, int n,
                       const std::vector<LatticeStep>& steps) {
    const AlignmentProblem problem(q, r, n);
    BruteForce bf{problem, steps};
    bf.walk({0, 0}, 0.0);
    return bf.best;
}

double identity_cost(const GridFunction& q, const GridFunction& r, int n) {
    const AlignmentProblem problem(q, r, n);
    double acc = 0.0;
    for (int k = 0; k + 1 < n; ++k) acc = acc + problem.segment_cost({k, k}, {k + 1, k + 1});
    return acc;
}

}  // namespace

TEST_CASE("neighborhood construction") {
    const auto nb = coprime_neighborhood();
    CHECK(nb.size() == 35);
    CHECK(nb.front() == LatticeStep{1, 1});
    for (std::size_t k = 1; k < nb.size(); ++k) {
        const int a = std::abs(nb[k - 1].dx - nb[k - 1].dy), b = std::abs(nb[k].dx - nb[k].dy);
        CHECK((a < b || (a == b && nb[k - 1].dx <= nb[k].dx)));
    }
    DpConfig bad;
    bad.neighborhood = {};
    CHECK_THROWS(bad.validate());
    bad.neighborhood = {{0, 1}};
    CHECK_THROWS(bad.validate());
    CHECK(DpConfig{}.resolved_lattice_size(200) == 200);
    CHECK(DpConfig{}.resolved_lattice_size(1000) == 201);
}

TEST_CASE("segment_cost examples") {
    const Grid g(101);
    const auto q = GridFunction::sample(g, [](double t) { return std::sin(2 * kPi * t) + t; });
    CHECK(segment_cost(q, q, {10, 10}, {13, 13}, 101) <= 1e-14);

    const auto zero = GridFunction::zeros(g);
    // trapezoid of q^2 over lattice nodes 20..25
    double expect = 0.0;
    for (int k = 20; k <= 25; ++k) {
        const double w = (k == 20 || k == 25) ? 0.5 : 1.0;
        expect += w * q[static_cast<std::size_t>(k)] * q[static_cast<std::size_t>(k)];
    }
    expect *= g.spacing();
    CHECK(segment_cost(q, zero, {20, 20}, {25, 22}, 101) == doctest::Approx(expect).epsilon(1e-12));

    CHECK_THROWS(segment_cost(q, q, {5, 5}, {5, 8}, 101));
    CHECK_THROWS(segment_cost(q, q, {5, 5}, {4, 8}, 101));
    CHECK_THROWS(segment_cost(q, q, {95, 95}, {102, 101}, 101));
}

TEST_CASE("segment cost vanishes along an exact piecewise-linear alignment") {
    const int n = 101;
    const Grid g(n);
    const auto r = GridFunction::sample(g, [](double t) { return std::cos(3 * kPi * t) + 0.3; });
    // gamma has slope 2 on [0, 0.3] and slope 4/7 afterwards
    const Warping gamma = path_to_warping({{0, 0}, {30, 60}, {100, 100}}, n, g);
    const auto q = action(r, gamma);
    const AlignmentProblem problem(q, r, n);
    // interior of the first linear piece, away from the kink
    CHECK(problem.segment_cost({5, 10}, {10, 20}) <= 1e-6);
    CHECK(problem.segment_cost({37, 64}, {44, 68}) <= 1e-6);
}

TEST_CASE("dp_align recovers the identity for identical inputs") {
    const Grid g(150);
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 5; ++trial) {
        const auto q = wt_test::random_smooth(g, rng);
        const AlignResult res = dp_align(q, q);
        CHECK(res.cost <= 1e-8);
        CHECK(sup_distance(res.warping, identity_warping(g)) <= 1.0 / 149.0 + 1e-12);
    }
}

TEST_CASE("dp_align recovers a lattice-representable warping") {
    const int n = 101;
    const Grid g(n);
    const auto r = GridFunction::sample(g, [](double t) {
        return std::sin(4 * kPi * t) + 0.5 * std::cos(7 * kPi * t) + 0.2;
    });
    const std::vector<std::vector<LatticeNode>> paths{
        {{0, 0}, {30, 60}, {100, 100}},
        {{0, 0}, {40, 20}, {70, 70}, {100, 100}},
        {{0, 0}, {21, 35}, {56, 50}, {100, 100}},
    };
    for (const auto& path : paths) {
        const Warping truth = path_to_warping(path, n, g);
        const auto q = action(r, truth);
        const AlignResult res = dp_align(q, r);
        CHECK(sup_distance(res.warping, truth) <= 2.0 / n);
    }
}

TEST_CASE("dp_align matches exhaustive enumeration on an 8x8 lattice") {
    const int n = 8;
    const Grid g(n);
    const std::vector<LatticeStep> steps{{1, 1}, {1, 2}, {2, 1}};
    DpConfig cfg;
    cfg.neighborhood = steps;
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const auto q = wt_test::random_smooth(g, rng), r = wt_test::random_smooth(g, rng);
        CHECK(dp_align(q, r, cfg).cost == exhaustive_cost(q, r, n, steps));
    }
}

TEST_CASE("dp_align matches exhaustive enumeration on random small problems") {
    std::mt19937_64 rng(12345);
    std::uniform_int_distribution<int> size(3, 10);
    std::uniform_int_distribution<int> step(1, 4);
    int checked = 0;
    while (checked < 120) {
        const int n = size(rng);
        std::vector<LatticeStep> steps{{1, 1}};
        for (int k = 0; k < 3; ++k) {
            const LatticeStep s{step(rng), step(rng)};
            if (std::gcd(s.dx, s.dy) == 1 && std::find(steps.begin(), steps.end(), s) == steps.end())
                steps.push_back(s);
        }
        DpConfig cfg;
        cfg.neighborhood = steps;
        const Grid g(static_cast<std::size_t>(n));
        const auto q = wt_test::random_smooth(g, rng), r = wt_test::random_smooth(g, rng);
        const AlignResult res = dp_align(q, r, cfg);
        CHECK(res.cost == exhaustive_cost(q, r, n, steps));
        ++checked;
    }
    // the full default neighborhood on the largest exhaustive lattice
    const Grid g(10);
    for (int trial = 0; trial < 5; ++trial) {
        const auto q = wt_test::random_smooth(g, rng), r = wt_test::random_smooth(g, rng);
        CHECK(dp_align(q, r).cost == exhaustive_cost(q, r, 10, coprime_neighborhood()));
    }
}

TEST_CASE("dp_align output is valid, deterministic and no worse than the identity") {
    std::mt19937_64 rng(21);
    for (std::size_t m : {50u, 120u, 200u, 333u}) {
        const Grid g(m);
        for (int trial = 0; trial < 4; ++trial) {
            const auto q = wt_test::random_smooth(g, rng), r = wt_test::random_smooth(g, rng);
            const AlignResult a = dp_align(q, r);
            const AlignResult b = dp_align(q, r);
            const int n = DpConfig{}.resolved_lattice_size(m);
            CHECK(a.cost <= identity_cost(q, r, n));
            CHECK(a.cost == b.cost);
            CHECK(std::equal(a.warping.values().begin(), a.warping.values().end(),
                             b.warping.values().begin()));
            CHECK(a.warping.values().front() == 0.0);
            CHECK(a.warping.values().back() == 1.0);
            for (std::size_t j = 1; j < m; ++j) CHECK(a.warping[j] > a.warping[j - 1]);
            CHECK(a.path.front() == LatticeNode{0, 0});
            CHECK(a.path.back() == LatticeNode{n - 1, n - 1});
        }
    }
}

TEST_CASE("unreachable corner is reported") {
    DpConfig cfg;
    cfg.neighborhood = {{2, 1}};
    const Grid g(9);
    const auto q = GridFunction::constant(g, 1.0);
    CHECK_THROWS_AS(dp_align(q, q, cfg), NumericalError);
}
