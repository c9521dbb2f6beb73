#include "warptrend/warping.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace warptrend {

namespace {

void check_warping(const std::vector<double>& v) {
    if (v.front() != 0.0 || v.back() != 1.0)
        throw std::invalid_argument("Warping: endpoints must be 0 and 1");
    for (std::size_t j = 1; j < v.size(); ++j) {
        if (!(v[j] > v[j - 1]))
            throw std::invalid_argument("Warping: not strictly increasing at sample " +
                                        std::to_string(j));
    }
}

std::vector<double> unit_sphere_point(std::vector<double> v, const Grid& grid) {
    GridFunction f(grid, std::move(v));
    const double n = norm(f);
    if (!(n > 0.0)) throw NumericalError("square-root slope has zero norm");
    f *= 1.0 / n;
    return {f.values().begin(), f.values().end()};
}

}  // namespace

Warping::Warping(Grid grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (values_.size() != grid_.size())
        throw GridMismatch("warping has " + std::to_string(values_.size()) + " values for " +
                           std::to_string(grid_.size()) + " grid points");
    check_warping(values_);
}

Warping Warping::repaired(Grid grid, std::vector<double> v) {
    if (v.size() != grid.size()) throw GridMismatch("repaired warping length");
    constexpr double gap = 1e-12;
    const std::size_t m = v.size();
    for (double& x : v) {
        if (!std::isfinite(x)) throw NumericalError("warping contains non-finite values");
        x = std::clamp(x, 0.0, 1.0);
    }
    v.front() = 0.0;
    v.back() = 1.0;
    for (std::size_t j = 1; j + 1 < m; ++j) v[j] = std::max(v[j], v[j - 1] + gap);
    for (std::size_t j = m - 1; j-- > 1;) v[j] = std::min(v[j], v[j + 1] - gap);
    for (std::size_t j = 1; j < m; ++j)
        if (!(v[j] > v[j - 1]))
            throw NumericalError("warping lost strict monotonicity at sample " + std::to_string(j));
    return Warping(std::move(grid), std::move(v));
}

SqrtSlope::SqrtSlope(Grid grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (values_.size() != grid_.size()) throw GridMismatch("square-root slope length");
    for (double x : values_)
        if (!(x > 0.0)) throw std::invalid_argument("SqrtSlope: values must be positive");
}

Warping identity_warping(const Grid& grid) {
    return Warping(grid, {grid.points().begin(), grid.points().end()});
}

Warping compose(const Warping& outer, const Warping& inner) {
    require_same_grid(outer.grid(), inner.grid(), "compose");
    std::vector<double> v(inner.size());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = outer(inner[j]);
    return Warping::repaired(inner.grid(), std::move(v));
}

Warping inverse(const Warping& gamma) {
    const Grid& grid = gamma.grid();
    const std::size_t m = grid.size();
    const auto y = gamma.values();
    std::vector<double> v(m);
    std::size_t k = 0;
    for (std::size_t j = 0; j < m; ++j) {
        const double t = grid[j];
        while (k + 2 < m && y[k + 1] < t) ++k;
        const double w = (t - y[k]) / (y[k + 1] - y[k]);
        v[j] = grid[k] + std::clamp(w, 0.0, 1.0) * (grid[k + 1] - grid[k]);
    }
    return Warping::repaired(grid, std::move(v));
}

GridFunction action(const GridFunction& g, const Warping& gamma) {
    require_same_grid(g.grid(), gamma.grid(), "action");
    const GridFunction slope = derivative(gamma.as_function());
    const auto gv = g.values();
    std::vector<double> out(g.size());
    for (std::size_t j = 0; j < out.size(); ++j)
        out[j] = interpolate_uniform(gv, gamma[j]) * std::sqrt(std::max(slope[j], kSlopeFloor));
    return GridFunction(g.grid(), std::move(out));
}

SqrtSlope to_sqrt_slope(const Warping& gamma) {
    const GridFunction slope = derivative(gamma.as_function());
    std::vector<double> psi(slope.size());
    for (std::size_t j = 0; j < psi.size(); ++j) psi[j] = std::sqrt(std::max(slope[j], kSlopeFloor));
    return SqrtSlope(gamma.grid(), unit_sphere_point(std::move(psi), gamma.grid()));
}

namespace {

Warping integrate_squared(const Grid& grid, std::span<const double> psi) {
    const std::size_t m = psi.size();
    std::vector<double> v(m);
    v[0] = 0.0;
    const double h = grid.spacing();
    for (std::size_t j = 1; j < m; ++j)
        v[j] = v[j - 1] + 0.5 * h * (psi[j - 1] * psi[j - 1] + psi[j] * psi[j]);
    const double total = v.back();
    if (!(total > 0.0)) throw NumericalError("square-root slope integrates to zero");
    for (double& x : v) x /= total;
    return Warping::repaired(grid, std::move(v));
}

}  // namespace

Warping from_sqrt_slope(const SqrtSlope& psi) { return integrate_squared(psi.grid(), psi.values()); }

double fisher_rao_distance(const Warping& a, const Warping& b) {
    const double c = inner_product(to_sqrt_slope(a).as_function(), to_sqrt_slope(b).as_function());
    return std::acos(std::clamp(c, -1.0, 1.0));
}

KarcherResult karcher_mean(std::span<const Warping> gammas, const KarcherOptions& opts) {
    if (gammas.empty()) throw std::invalid_argument("karcher_mean: empty list");
    const Grid& grid = gammas.front().grid();
    std::vector<GridFunction> psis;
    psis.reserve(gammas.size());
    for (const Warping& g : gammas) {
        require_same_grid(grid, g.grid(), "karcher_mean");
        psis.push_back(to_sqrt_slope(g).as_function());
    }

    GridFunction mean = mean_function(psis);
    mean *= 1.0 / norm(mean);

    KarcherResult result{identity_warping(grid)};
    const double inv_n = 1.0 / static_cast<double>(psis.size());
    for (int it = 0; it < opts.max_iter; ++it) {
        GridFunction tangent = GridFunction::zeros(grid);
        for (const GridFunction& psi : psis) {
            const double c = std::clamp(inner_product(mean, psi), -1.0, 1.0);
            const double theta = std::acos(c);
            if (theta < 1e-12) continue;
            GridFunction v = psi;
            v.axpy(-c, mean);
            tangent.axpy(inv_n * theta / std::sin(theta), v);
        }
        const double tn = norm(tangent);
        result.iterations = it + 1;
        result.gradient_norm = tn;
        if (tn < opts.tol) {
            result.converged = true;
            break;
        }
        const double s = opts.step * tn;
        GridFunction next = mean * std::cos(s);
        next.axpy(std::sin(s) / tn, tangent);
        next *= 1.0 / norm(next);
        mean = std::move(next);
    }
    result.mean = integrate_squared(grid, mean.values());
    return result;
}

CenteredWarpings center_warpings(std::span<const Warping> gammas, const KarcherOptions& opts) {
    if (gammas.empty()) throw std::invalid_argument("center_warpings: empty list");
    std::vector<Warping> inverses;
    inverses.reserve(gammas.size());
    for (const Warping& g : gammas) inverses.push_back(inverse(g));
    KarcherResult km = karcher_mean(inverses, opts);

    std::vector<Warping> out;
    out.reserve(gammas.size());
    for (const Warping& g : gammas) out.push_back(compose(km.mean, g));
    return {std::move(out), std::move(km.mean), km.converged};
}

}  // namespace warptrend
