#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "warptrend/basis.hpp"
#include "warptrend/grid.hpp"
#include "warptrend/warping.hpp"

namespace warptrend {

enum class Scenario {
    Fig1,               // g = cos 10πt, h = 1.5 e^{-3t}, exponential warpings
    SubspaceSelection,  // envelope-modulated sine seasonality, squared-cosine warp densities
    NoisePerturbation,  // two Gaussian bumps, h = cos(πt + π/2)
};

std::string_view to_string(Scenario s);
std::optional<Scenario> parse_scenario(std::string_view name);

struct ScenarioSpec {
    Scenario scenario = Scenario::Fig1;
    int n = 30;
    int m = 200;
    double sigma = 0.0;
    std::uint64_t seed = 1;

    void validate() const;
};

/// Basis the scenario is meant to be analysed with.
BasisSpec designated_basis(Scenario s);

struct SyntheticPanel {
    ScenarioSpec spec;
    std::vector<GridFunction> observations;
    GridFunction h;
    GridFunction g;
    std::vector<Warping> warpings;      // centered so KM{γ_i⁻¹} = id
    std::vector<Warping> raw_warpings;  // the analytic family before centering
    std::vector<double> g_basis_coefficients;  // ⟨g, φ_k⟩ for the designated basis
};

/// Builds the scenario's truth and observations f_i = h + (g, γ_i) + ε_i with
/// ε ~ N(0, σ²) i.i.d. per sample, drawn from mt19937_64(seed).
SyntheticPanel generate(const ScenarioSpec& spec);

/// Normalized-integral warping γ(t) = ∫₀ᵗ d / ∫₀¹ d for a positive density,
/// integrated with `substeps` trapezoid panels per grid cell.
Warping warping_from_density(const Grid& grid, const std::function<double(double)>& density,
                             int substeps = 32);

/// Percent change between consecutive rates.
std::vector<double> fluctuation(std::span<const double> rates);

}  // namespace warptrend
