#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "warptrend/estimator.hpp"
#include "warptrend/grid.hpp"

namespace warptrend {

/// ρ_h0 = ‖h‖ (null trend).
double stat_trend_null(const GridFunction& h);
/// ρ_hc = ‖h − ∫h‖ (constant trend).
double stat_trend_constant(const GridFunction& h);
/// ρ_hl = ‖ḣ − ∫ḣ‖ (linear trend).
double stat_trend_linear(const GridFunction& h);

/// One-sided p-value 1 − Φ(ρ / se) under a N(0, se) null.
double one_sided_p_value(double statistic, double standard_error);

/// Two-sided normal critical value z^{1−α/2}.
double normal_critical_value(double alpha);

struct BootstrapConfig {
    int replicates = 500;
    double alpha = 0.05;
    std::uint64_t seed = 1;
    int max_retries = 3;
    double max_failure_fraction = 0.05;

    void validate() const;
};

struct TestResult {
    double statistic = 0.0;
    double standard_error = 0.0;
    double p_value = 1.0;
};

struct Band {
    GridFunction mean;
    GridFunction standard_error;
    GridFunction low;
    GridFunction high;
};

struct BootstrapSummary {
    DecompositionResult estimate;  // fit on the original panel
    Band h;
    Band g;
    double alpha = 0.05;
    std::map<std::string, TestResult> tests;  // "null", "constant", "linear"
    std::vector<GridFunction> h_replicates;
    std::vector<GridFunction> g_replicates;
    std::vector<std::vector<int>> resamples;  // observation indices per replicate
    std::vector<double> replicate_costs;      // final cost of each replicate fit
    int failed_attempts = 0;
    int failed_replicates = 0;
};

class BootstrapFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Indices of a case resample of n observations for replicate b, attempt k.
std::vector<int> resample_indices(std::uint64_t seed, int replicate, int attempt, int n);

/// Case-resampling bootstrap of decompose with the configuration held fixed.
BootstrapSummary bootstrap(std::span<const GridFunction> fs, const EstimatorConfig& cfg,
                           const BootstrapConfig& bcfg);

/// Pointwise mean ± z·se bands from stored replicates.
Band make_band(const std::vector<GridFunction>& replicates, double alpha);

}  // namespace warptrend
