#include "warptrend/estimator.hpp"

#include <cmath>
#include <limits>
#include <optional>

#include "warptrend/parallel.hpp"

namespace warptrend {

void EstimatorConfig::validate() const {
    basis.validate();
    dp.validate();
    if (max_iter < 1) throw std::invalid_argument("EstimatorConfig: max_iter must be >= 1");
    if (!(cost_slack >= 0.0)) throw std::invalid_argument("EstimatorConfig: cost_slack must be >= 0");
}

namespace {

void require_panel(std::span<const GridFunction> fs, std::span<const Warping> gammas,
                   const char* where) {
    if (fs.empty()) throw std::invalid_argument(std::string(where) + ": no observations");
    if (fs.size() != gammas.size())
        throw std::invalid_argument(std::string(where) + ": " + std::to_string(fs.size()) +
                                    " observations vs " + std::to_string(gammas.size()) +
                                    " warpings");
    for (std::size_t i = 0; i < fs.size(); ++i) {
        require_same_grid(fs[0].grid(), fs[i].grid(), where);
        require_same_grid(fs[0].grid(), gammas[i].grid(), where);
    }
}

}  // namespace

double cost(std::span<const GridFunction> fs, const GridFunction& h, const GridFunction& g,
            std::span<const Warping> gammas) {
    require_panel(fs, gammas, "cost");
    double total = 0.0;
    for (std::size_t i = 0; i < fs.size(); ++i) {
        GridFunction resid = fs[i] - h;
        resid -= action(g, gammas[i]);
        total += inner_product(resid, resid);
    }
    return total / static_cast<double>(fs.size());
}

GridFunction update_h(std::span<const GridFunction> fs, const GridFunction& g,
                      std::span<const Warping> gammas, const OrthonormalBasis& basis) {
    require_panel(fs, gammas, "update_h");
    std::vector<GridFunction> resid;
    resid.reserve(fs.size());
    for (std::size_t i = 0; i < fs.size(); ++i) resid.push_back(fs[i] - action(g, gammas[i]));
    return project(mean_function(resid), basis);
}

GridFunction update_g(std::span<const GridFunction> fs, const GridFunction& h,
                      std::span<const Warping> gammas, const OrthonormalBasis& basis) {
    require_panel(fs, gammas, "update_g");
    std::vector<GridFunction> unwarped;
    unwarped.reserve(fs.size());
    for (std::size_t i = 0; i < fs.size(); ++i)
        unwarped.push_back(action(fs[i] - h, inverse(gammas[i])));
    return project_complement(mean_function(unwarped), basis);
}

CenteredWarpings update_warpings(std::span<const GridFunction> fs, const GridFunction& h,
                                 const GridFunction& g, const DpConfig& dp,
                                 const KarcherOptions& karcher) {
    if (fs.empty()) throw std::invalid_argument("update_warpings: no observations");
    std::vector<std::optional<Warping>> raw(fs.size());
    parallel_for(fs.size(), [&](std::size_t i) {
        raw[i].emplace(dp_align(fs[i] - h, g, dp).warping);
    });
    std::vector<Warping> aligned;
    aligned.reserve(raw.size());
    for (auto& w : raw) aligned.push_back(std::move(*w));
    return center_warpings(aligned, karcher);
}

DecompositionResult decompose(std::span<const GridFunction> fs, const EstimatorConfig& cfg) {
    cfg.validate();
    if (fs.size() < 2)
        throw std::invalid_argument("decompose: need at least 2 observations, got " +
                                    std::to_string(fs.size()));
    const Grid& grid = fs[0].grid();
    for (const GridFunction& f : fs) require_same_grid(grid, f.grid(), "decompose");

    const OrthonormalBasis basis = build_orthonormal(cfg.basis, grid);

    // start from the observation closest to the cross-sectional mean
    const GridFunction fbar = mean_function(fs);
    std::size_t seed_index = 0;
    double seed_dist = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < fs.size(); ++i) {
        const double d = norm(fs[i] - fbar);
        if (d < seed_dist) {
            seed_dist = d;
            seed_index = i;
        }
    }
    GridFunction g = fs[seed_index];
    GridFunction h = GridFunction::zeros(grid);
    std::vector<Warping> gammas(fs.size(), identity_warping(grid));

    DecompositionResult out{h, g, gammas, 0.0, 0.0, {}, 0.0, true};
    out.initial_cost = cost(fs, h, g, gammas);

    for (int it = 1; it <= cfg.max_iter; ++it) {
        const char* block = "warping";
        try {
            CenteredWarpings centered = update_warpings(fs, h, g, cfg.dp, cfg.karcher);
            gammas = std::move(centered.warpings);
            out.centering_converged = out.centering_converged && centered.converged;
            block = "seasonality";
            g = update_g(fs, h, gammas, basis);
            block = "trend";
            h = update_h(fs, g, gammas, basis);
            block = "cost";
            out.cost_trace.push_back(cost(fs, h, g, gammas));
        } catch (const std::exception& e) {
            throw EstimationError("decompose: iteration " + std::to_string(it) + ", " + block +
                                  " update failed: " + e.what());
        }

        // a fixed point or a two-cycle between lattice solutions both end here
        const std::size_t k = out.cost_trace.size();
        if (k >= 3) {
            const double before = out.cost_trace[k - 3];
            const double change = std::abs(out.cost_trace[k - 1] - before);
            if (change <= cfg.stall_tol * before) break;
        }
    }

    out.h_hat = std::move(h);
    out.g_hat = std::move(g);
    out.warpings = std::move(gammas);
    out.neg_log_likelihood = out.cost_trace.back();
    out.sigma_hat = std::sqrt(std::max(0.0, out.neg_log_likelihood));
    return out;
}

SeparationResult separation_model(std::span<const GridFunction> fs, const OrthonormalBasis& basis) {
    if (fs.empty()) throw std::invalid_argument("separation_model: no observations");
    const GridFunction fbar = mean_function(fs);
    SeparationResult out{project(fbar, basis), project_complement(fbar, basis)};
    const GridFunction fitted = out.h_hat + out.g_hat;
    double total = 0.0;
    for (const GridFunction& f : fs) {
        const GridFunction r = f - fitted;
        total += inner_product(r, r);
    }
    out.residual_cost = total / static_cast<double>(fs.size());
    return out;
}

SubspaceSelection select_subspace(std::span<const GridFunction> fs, BasisFamily family,
                                  int first_level, int last_level, const EstimatorConfig& cfg) {
    if (first_level < 1 || last_level < first_level || last_level > cfg.basis.max_level)
        throw std::invalid_argument("select_subspace: level range [" + std::to_string(first_level) +
                                    ", " + std::to_string(last_level) + "] is invalid");
    SubspaceSelection sel;
    double best = std::numeric_limits<double>::infinity();
    for (int l = first_level; l <= last_level; ++l) {
        EstimatorConfig c = cfg;
        c.basis.family = family;
        c.basis.level = l;
        DecompositionResult r = decompose(fs, c);
        if (r.neg_log_likelihood < best) {
            best = r.neg_log_likelihood;
            sel.selected_level = l;
        }
        sel.levels.push_back(l);
        sel.results.push_back(std::move(r));
    }
    return sel;
}

}  // namespace warptrend
