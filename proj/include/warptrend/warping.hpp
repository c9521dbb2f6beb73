#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "warptrend/grid.hpp"

namespace warptrend {

class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Boundary-preserving, strictly increasing map of [0,1] sampled on a grid.
class Warping {
public:
    /// Validates endpoints, range and strict monotonicity.
    Warping(Grid grid, std::vector<double> values);

    /// Pins the endpoints and nudges ties apart by at most 1e-12 before
    /// validating; throws NumericalError if monotonicity cannot be restored.
    static Warping repaired(Grid grid, std::vector<double> values);

    const Grid& grid() const noexcept { return grid_; }
    std::span<const double> values() const noexcept { return values_; }
    double operator[](std::size_t j) const noexcept { return values_[j]; }
    std::size_t size() const noexcept { return values_.size(); }

    double operator()(double t) const { return interpolate_uniform(values_, t); }

    GridFunction as_function() const { return GridFunction(grid_, values_); }

private:
    Grid grid_;
    std::vector<double> values_;
};

/// ψ = √(dγ/dt), a point on the positive orthant of the unit L2 sphere.
class SqrtSlope {
public:
    SqrtSlope(Grid grid, std::vector<double> values);

    const Grid& grid() const noexcept { return grid_; }
    std::span<const double> values() const noexcept { return values_; }
    GridFunction as_function() const { return GridFunction(grid_, values_); }

private:
    Grid grid_;
    std::vector<double> values_;
};

Warping identity_warping(const Grid& grid);

/// (γ1 ∘ γ2)(t) = γ1(γ2(t)).
Warping compose(const Warping& outer, const Warping& inner);
Warping inverse(const Warping& gamma);

/// Norm-preserving right action (g ∘ γ)·√γ̇.
GridFunction action(const GridFunction& g, const Warping& gamma);

inline constexpr double kSlopeFloor = 1e-8;

SqrtSlope to_sqrt_slope(const Warping& gamma);
Warping from_sqrt_slope(const SqrtSlope& psi);

/// Geodesic distance arccos⟨ψ1, ψ2⟩ between square-root slopes.
double fisher_rao_distance(const Warping& a, const Warping& b);

struct KarcherOptions {
    double tol = 1e-6;
    int max_iter = 50;
    double step = 0.3;
};

struct KarcherResult {
    Warping mean;
    bool converged = false;
    int iterations = 0;
    double gradient_norm = 0.0;
};

/// Intrinsic mean on the sphere of square-root slopes. Non-convergence is
/// reported through `converged`, not thrown.
KarcherResult karcher_mean(std::span<const Warping> gammas, const KarcherOptions& opts = {});

struct CenteredWarpings {
    std::vector<Warping> warpings;
    Warping mean_of_inverses;
    bool converged = false;
};

/// Replaces each γ_i by μ ∘ γ_i where μ is the Karcher mean of the inverses,
/// so the inverses of the output average to the identity.
CenteredWarpings center_warpings(std::span<const Warping> gammas, const KarcherOptions& opts = {});

}  // namespace warptrend
