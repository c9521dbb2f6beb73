#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "warptrend/basis.hpp"
#include "warptrend/dpalign.hpp"
#include "warptrend/grid.hpp"
#include "warptrend/warping.hpp"

namespace warptrend {

/// Failure inside decompose, tagged with the iteration and block.
class EstimationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct EstimatorConfig {
    BasisSpec basis;
    int max_iter = 20;
    DpConfig dp;
    KarcherOptions karcher;
    double cost_slack = 1e-2;
    /// Stop early once the cost moves by less than this (relative) across two
    /// iterations.
    double stall_tol = 1e-8;

    void validate() const;
};

struct DecompositionResult {
    GridFunction h_hat;
    GridFunction g_hat;
    std::vector<Warping> warpings;
    double sigma_hat = 0.0;
    double initial_cost = 0.0;
    std::vector<double> cost_trace;
    double neg_log_likelihood = 0.0;
    bool centering_converged = true;
};

/// C(g, {γ_i}, h) = (1/n) Σ ‖f_i − h − (g, γ_i)‖².
double cost(std::span<const GridFunction> fs, const GridFunction& h, const GridFunction& g,
            std::span<const Warping> gammas);

/// Π_H of the mean of f_i − (g, γ_i).
GridFunction update_h(std::span<const GridFunction> fs, const GridFunction& g,
                      std::span<const Warping> gammas, const OrthonormalBasis& basis);

/// Π_{H⊥} of the mean of (f_i − h, γ_i⁻¹).
GridFunction update_g(std::span<const GridFunction> fs, const GridFunction& h,
                      std::span<const Warping> gammas, const OrthonormalBasis& basis);

/// Per-observation alignment of f_i − h against g followed by Karcher
/// recentering of the inverses.
CenteredWarpings update_warpings(std::span<const GridFunction> fs, const GridFunction& h,
                                 const GridFunction& g, const DpConfig& dp,
                                 const KarcherOptions& karcher = {});

/// Coordinate descent: warpings, then g, then h, once per iteration.
DecompositionResult decompose(std::span<const GridFunction> fs, const EstimatorConfig& cfg);

struct SeparationResult {
    GridFunction h_hat;
    GridFunction g_hat;
    double residual_cost = 0.0;
};

/// Baseline without warping: complementary projections of the mean.
SeparationResult separation_model(std::span<const GridFunction> fs, const OrthonormalBasis& basis);

struct SubspaceSelection {
    int selected_level = 0;
    std::vector<int> levels;
    std::vector<DecompositionResult> results;
};

/// Runs decompose for every level in [first, last] and picks the smallest
/// final negative log-likelihood (ties go to the smaller level).
SubspaceSelection select_subspace(std::span<const GridFunction> fs, BasisFamily family,
                                  int first_level, int last_level, const EstimatorConfig& cfg);

}  // namespace warptrend
