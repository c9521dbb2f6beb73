#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "test_support.hpp"
#include "warptrend/inference.hpp"

using namespace warptrend;
using wt_test::kPi;

namespace {

EstimatorConfig small_config() {
    EstimatorConfig cfg;
    cfg.basis = {BasisFamily::Cosine, 5};
    cfg.max_iter = 4;
    return cfg;
}

SyntheticPanel small_fig1() { return generate({Scenario::Fig1, 8, 60, 0.0, 1}); }

}  // namespace

TEST_CASE("trend statistics examples") {
    const Grid g(2001);
    CHECK(stat_trend_null(GridFunction::zeros(g)) == 0.0);
    const auto s = GridFunction::sample(g, [](double t) { return std::sqrt(2.0) * std::sin(kPi * t); });
    CHECK(std::abs(stat_trend_null(s) - 1.0) <= 1e-5);
    CHECK(std::abs(stat_trend_constant(GridFunction::constant(g, 3.7))) <= 1e-12);
    // mean of sqrt(2) sin(pi t) is 2 sqrt(2)/pi
    CHECK(std::abs(stat_trend_constant(s) - std::sqrt(1.0 - 8.0 / (kPi * kPi))) <= 1e-5);
    const auto lin = GridFunction::sample(g, [](double t) { return 2.0 - 5.0 * t; });
    CHECK(std::abs(stat_trend_linear(lin)) <= 1e-6);
    const auto sq = GridFunction::sample(g, [](double t) { return t * t; });
    CHECK(std::abs(stat_trend_linear(sq) - 1.0 / std::sqrt(3.0)) <= 1e-4);
}

TEST_CASE("p-values against a long double oracle") {
    for (double rho : {0.0, 1e-4, 0.01, 0.3, 0.61, 1.0, 2.5}) {
        for (double se : {1e-3, 3.5e-3, 0.05, 0.4, 1.0, 7.0}) {
            const long double z = static_cast<long double>(rho) / static_cast<long double>(se);
            const long double oracle = 0.5L * std::erfc(z / std::sqrt(2.0L));
            const double p = one_sided_p_value(rho, se);
            CHECK(std::abs(static_cast<long double>(p) - oracle) <= 1e-12L);
            CHECK(p >= 0.0);
            CHECK(p <= 1.0);
        }
    }
    CHECK(one_sided_p_value(0.0, 1.0) == 0.5);
    CHECK(one_sided_p_value(0.5, 0.0) == 0.0);
}

TEST_CASE("normal critical values") {
    CHECK(normal_critical_value(0.05) == doctest::Approx(1.959963984540054).epsilon(1e-14));
    CHECK(normal_critical_value(0.01) == doctest::Approx(2.5758293035489004).epsilon(1e-14));
    CHECK_THROWS(normal_critical_value(0.0));
    CHECK_THROWS(normal_critical_value(1.0));
}

TEST_CASE("resample indices are reproducible and in range") {
    const auto a = resample_indices(42, 3, 0, 30);
    CHECK(a == resample_indices(42, 3, 0, 30));
    CHECK(a != resample_indices(42, 3, 1, 30));
    CHECK(a != resample_indices(42, 4, 0, 30));
    CHECK(a != resample_indices(43, 3, 0, 30));
    for (int k : a) {
        CHECK(k >= 0);
        CHECK(k < 30);
    }
}

TEST_CASE("bands from stored replicates") {
    const Grid g(50);
    std::mt19937_64 rng(1);
    std::vector<GridFunction> reps;
    for (int b = 0; b < 40; ++b) reps.push_back(wt_test::random_smooth(g, rng));
    const Band b95 = make_band(reps, 0.05);
    const Band b99 = make_band(reps, 0.01);
    const auto avg = mean_function(reps);
    for (std::size_t j = 0; j < g.size(); ++j) {
        CHECK(std::abs(b95.mean[j] - avg[j]) <= 1e-12);
        CHECK(b95.low[j] <= b95.high[j]);
        CHECK(b99.low[j] <= b95.low[j]);
        CHECK(b99.high[j] >= b95.high[j]);
        CHECK(b95.standard_error[j] >= 0.0);
    }
    CHECK_THROWS(make_band({reps.front()}, 0.05));
}

TEST_CASE("bootstrap is deterministic and internally consistent") {
    const SyntheticPanel p = small_fig1();
    BootstrapConfig bcfg;
    bcfg.replicates = 12;
    bcfg.seed = 99;
    const BootstrapSummary a = bootstrap(p.observations, small_config(), bcfg);
    const BootstrapSummary b = bootstrap(p.observations, small_config(), bcfg);
    REQUIRE(a.h_replicates.size() == 12);
    CHECK(a.resamples == b.resamples);
    CHECK(a.replicate_costs == b.replicate_costs);
    for (std::size_t k = 0; k < a.h_replicates.size(); ++k) {
        CHECK(std::equal(a.h_replicates[k].values().begin(), a.h_replicates[k].values().end(),
                         b.h_replicates[k].values().begin()));
    }
    for (const auto& [name, t] : a.tests) {
        CHECK(t.statistic == b.tests.at(name).statistic);
        CHECK(t.standard_error == b.tests.at(name).standard_error);
        CHECK(t.p_value == b.tests.at(name).p_value);
        CHECK(t.standard_error >= 0.0);
        CHECK(t.p_value >= 0.0);
        CHECK(t.p_value <= 1.0);
    }
    CHECK(a.tests.size() == 3);

    const auto avg = mean_function(a.h_replicates);
    for (std::size_t j = 0; j < avg.size(); ++j) {
        CHECK(std::abs(a.h.mean[j] - avg[j]) <= 1e-12);
        CHECK(a.h.low[j] <= a.h.high[j]);
        CHECK(a.g.low[j] <= a.g.high[j]);
    }
    CHECK(a.tests.at("null").statistic == stat_trend_null(a.estimate.h_hat));

    BootstrapConfig wide = bcfg;
    wide.alpha = 0.01;
    const BootstrapSummary w = bootstrap(p.observations, small_config(), wide);
    for (std::size_t j = 0; j < avg.size(); ++j) {
        CHECK(w.h.low[j] <= a.h.low[j]);
        CHECK(w.h.high[j] >= a.h.high[j]);
    }
}

TEST_CASE("identical observations collapse the bands") {
    const SyntheticPanel p = small_fig1();
    const std::vector<GridFunction> same(6, p.observations[2]);
    BootstrapConfig bcfg;
    bcfg.replicates = 5;
    const BootstrapSummary s = bootstrap(same, small_config(), bcfg);
    for (std::size_t j = 0; j < s.h.mean.size(); ++j) {
        CHECK(s.h.standard_error[j] <= 1e-12);
        CHECK(std::abs(s.h.low[j] - s.estimate.h_hat[j]) <= 1e-10);
        CHECK(std::abs(s.h.high[j] - s.estimate.h_hat[j]) <= 1e-10);
        CHECK(std::abs(s.g.low[j] - s.estimate.g_hat[j]) <= 1e-10);
    }
}

TEST_CASE("bootstrap configuration is validated") {
    const SyntheticPanel p = small_fig1();
    BootstrapConfig bcfg;
    bcfg.replicates = 1;
    CHECK_THROWS(bootstrap(p.observations, small_config(), bcfg));
    bcfg.replicates = 5;
    bcfg.alpha = 1.5;
    CHECK_THROWS(bootstrap(p.observations, small_config(), bcfg));
}
