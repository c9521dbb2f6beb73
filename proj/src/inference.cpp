#include "warptrend/inference.hpp"

#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <numbers>
#include <optional>
#include <random>

#include "warptrend/parallel.hpp"

namespace warptrend {

double stat_trend_null(const GridFunction& h) { return norm(h); }

double stat_trend_constant(const GridFunction& h) {
    const double mean = integral(h);
    GridFunction centered = h;
    centered -= GridFunction::constant(h.grid(), mean);
    return norm(centered);
}

double stat_trend_linear(const GridFunction& h) { return stat_trend_constant(derivative(h)); }

double one_sided_p_value(double statistic, double standard_error) {
    if (!(standard_error > 0.0)) return statistic > 0.0 ? 0.0 : 0.5;
    return 0.5 * std::erfc(statistic / (standard_error * std::numbers::sqrt2));
}

double normal_critical_value(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("normal_critical_value: alpha must lie in (0,1)");
    return boost::math::quantile(boost::math::normal_distribution<double>(), 1.0 - alpha / 2.0);
}

void BootstrapConfig::validate() const {
    if (replicates < 2) throw std::invalid_argument("BootstrapConfig: need at least 2 replicates");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("BootstrapConfig: alpha must lie in (0,1)");
    if (max_retries < 0) throw std::invalid_argument("BootstrapConfig: max_retries must be >= 0");
}

std::vector<int> resample_indices(std::uint64_t seed, int replicate, int attempt, int n) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(replicate), static_cast<std::uint32_t>(attempt)};
    std::mt19937_64 rng(seq);
    std::vector<int> idx(static_cast<std::size_t>(n));
    for (int& k : idx) {
        // multiply-shift keeps the mapping identical across standard libraries
        const unsigned __int128 wide = static_cast<unsigned __int128>(rng()) * static_cast<unsigned>(n);
        k = static_cast<int>(wide >> 64);
    }
    return idx;
}

Band make_band(const std::vector<GridFunction>& replicates, double alpha) {
    if (replicates.size() < 2) throw std::invalid_argument("make_band: need at least 2 replicates");
    const Grid& grid = replicates.front().grid();
    const std::size_t m = grid.size();
    const double b = static_cast<double>(replicates.size());
    std::vector<double> mean(m, 0.0), se(m, 0.0), lo(m), hi(m);
    for (const GridFunction& r : replicates)
        for (std::size_t j = 0; j < m; ++j) mean[j] += r[j];
    for (double& x : mean) x /= b;
    for (const GridFunction& r : replicates)
        for (std::size_t j = 0; j < m; ++j) se[j] += (r[j] - mean[j]) * (r[j] - mean[j]);
    for (double& x : se) x = std::sqrt(x / (b - 1.0));
    const double z = normal_critical_value(alpha);
    for (std::size_t j = 0; j < m; ++j) {
        lo[j] = mean[j] - z * se[j];
        hi[j] = mean[j] + z * se[j];
    }
    return {GridFunction(grid, std::move(mean)), GridFunction(grid, std::move(se)),
            GridFunction(grid, std::move(lo)), GridFunction(grid, std::move(hi))};
}

namespace {

double sample_sd(const std::vector<double>& xs) {
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

struct Replicate {
    std::optional<DecompositionResult> fit;
    std::vector<int> indices;
    int failures = 0;
};

}  // namespace

BootstrapSummary bootstrap(std::span<const GridFunction> fs, const EstimatorConfig& cfg,
                           const BootstrapConfig& bcfg) {
    bcfg.validate();
    if (fs.size() < 2) throw std::invalid_argument("bootstrap: need at least 2 observations");
    const int n = static_cast<int>(fs.size());

    DecompositionResult estimate = decompose(fs, cfg);

    std::vector<Replicate> reps(static_cast<std::size_t>(bcfg.replicates));
    parallel_for(reps.size(), [&](std::size_t b) {
        Replicate& rep = reps[b];
        for (int attempt = 0; attempt <= bcfg.max_retries; ++attempt) {
            rep.indices = resample_indices(bcfg.seed, static_cast<int>(b), attempt, n);
            std::vector<GridFunction> panel;
            panel.reserve(fs.size());
            for (int k : rep.indices) panel.push_back(fs[static_cast<std::size_t>(k)]);
            try {
                rep.fit.emplace(decompose(panel, cfg));
                return;
            } catch (const std::exception&) {
                ++rep.failures;
            }
        }
    });

    std::vector<GridFunction> h_reps, g_reps;
    std::vector<std::vector<int>> resamples;
    std::vector<double> rho0, rhoc, rhol, costs;
    int failed_attempts = 0;
    int failed_replicates = 0;
    for (Replicate& rep : reps) {
        failed_attempts += rep.failures;
        if (!rep.fit) {
            ++failed_replicates;
            continue;
        }
        rho0.push_back(stat_trend_null(rep.fit->h_hat));
        rhoc.push_back(stat_trend_constant(rep.fit->h_hat));
        rhol.push_back(stat_trend_linear(rep.fit->h_hat));
        costs.push_back(rep.fit->neg_log_likelihood);
        h_reps.push_back(std::move(rep.fit->h_hat));
        g_reps.push_back(std::move(rep.fit->g_hat));
        resamples.push_back(std::move(rep.indices));
    }
    if (failed_replicates > bcfg.max_failure_fraction * bcfg.replicates || h_reps.size() < 2)
        throw BootstrapFailure("bootstrap: " + std::to_string(failed_replicates) + " of " +
                               std::to_string(bcfg.replicates) + " replicates failed");

    Band h_band = make_band(h_reps, bcfg.alpha);
    Band g_band = make_band(g_reps, bcfg.alpha);
    BootstrapSummary out{std::move(estimate), std::move(h_band), std::move(g_band), bcfg.alpha,
                         {}, std::move(h_reps), std::move(g_reps), std::move(resamples),
                         std::move(costs), failed_attempts, failed_replicates};

    auto add = [&](const char* name, double rho, const std::vector<double>& reps_rho) {
        const double se = sample_sd(reps_rho);
        out.tests[name] = {rho, se, one_sided_p_value(rho, se)};
    };
    add("null", stat_trend_null(out.estimate.h_hat), rho0);
    add("constant", stat_trend_constant(out.estimate.h_hat), rhoc);
    add("linear", stat_trend_linear(out.estimate.h_hat), rhol);
    return out;
}

}  // namespace warptrend
