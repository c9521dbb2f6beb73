#include "warptrend/synthgen.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace warptrend {

std::string_view to_string(Scenario s) {
    switch (s) {
        case Scenario::Fig1: return "fig1";
        case Scenario::SubspaceSelection: return "subspace_selection";
        case Scenario::NoisePerturbation: return "noise_perturbation";
    }
    return "unknown";
}

std::optional<Scenario> parse_scenario(std::string_view name) {
    if (name == "fig1") return Scenario::Fig1;
    if (name == "subspace_selection") return Scenario::SubspaceSelection;
    if (name == "noise_perturbation") return Scenario::NoisePerturbation;
    return std::nullopt;
}

void ScenarioSpec::validate() const {
    if (n < 2) throw std::invalid_argument("ScenarioSpec: n must be >= 2");
    if (m < 3) throw std::invalid_argument("ScenarioSpec: m must be >= 3");
    if (!(sigma >= 0.0)) throw std::invalid_argument("ScenarioSpec: sigma must be >= 0");
}

BasisSpec designated_basis(Scenario s) {
    switch (s) {
        case Scenario::Fig1: return {BasisFamily::Cosine, 5};
        case Scenario::SubspaceSelection: return {BasisFamily::ShiftedLegendre, 4};
        case Scenario::NoisePerturbation: return {BasisFamily::Sine, 1};
    }
    return {};
}

Warping warping_from_density(const Grid& grid, const std::function<double(double)>& density,
                             int substeps) {
    const std::size_t m = grid.size();
    std::vector<double> v(m, 0.0);
    const double h = grid.spacing() / substeps;
    double acc = 0.0;
    double prev = density(0.0);
    for (std::size_t j = 1; j < m; ++j) {
        for (int s = 1; s <= substeps; ++s) {
            const double t = grid[j - 1] + s * h;
            const double cur = density(std::min(t, 1.0));
            if (!(cur > 0.0)) throw std::invalid_argument("warping density must be positive");
            acc += 0.5 * h * (prev + cur);
            prev = cur;
        }
        v[j] = acc;
    }
    for (double& x : v) x /= acc;
    return Warping::repaired(grid, std::move(v));
}

namespace {

constexpr double pi = std::numbers::pi;

Warping exponential_warping(const Grid& grid, double a) {
    if (std::abs(a) < 1e-12) return identity_warping(grid);
    std::vector<double> v(grid.size());
    const double denom = std::expm1(a);
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = std::expm1(a * grid[j]) / denom;
    return Warping::repaired(grid, std::move(v));
}

}  // namespace

SyntheticPanel generate(const ScenarioSpec& spec) {
    spec.validate();
    const Grid grid(static_cast<std::size_t>(spec.m));
    const int n = spec.n;

    GridFunction h = GridFunction::zeros(grid);
    GridFunction g = GridFunction::zeros(grid);
    std::vector<Warping> raw;
    raw.reserve(static_cast<std::size_t>(n));

    switch (spec.scenario) {
        case Scenario::Fig1: {
            g = GridFunction::sample(grid, [](double t) { return std::cos(10.0 * pi * t); });
            h = GridFunction::sample(grid, [](double t) { return 1.5 * std::exp(-3.0 * t); });
            for (int i = 1; i <= n; ++i) raw.push_back(exponential_warping(grid, -3.0 + 6.0 * i / n));
            break;
        }
        case Scenario::SubspaceSelection: {
            g = GridFunction::sample(grid, [](double t) {
                return 5.0 * (0.25 - (t - 0.5) * (t - 0.5)) * std::sin(5.0 * pi * t);
            });
            h = GridFunction::sample(grid, [](double t) { return 0.05 * std::exp(3.0 * t) - 0.5; });
            for (int i = 1; i <= n; ++i) {
                const double shift = -0.5 + static_cast<double>(i) / n;
                raw.push_back(warping_from_density(grid, [shift](double t) {
                    const double c = 3.0 * std::cos(pi * t + shift);
                    return c * c + 0.1;
                }));
            }
            break;
        }
        case Scenario::NoisePerturbation: {
            g = GridFunction::sample(grid, [](double t) {
                const double a = 10.0 * t - 7.5;
                const double b = 10.0 * t - 2.5;
                return 2.0 * std::exp(-0.8 * a * a) + 2.0 * std::exp(-0.8 * b * b);
            });
            h = GridFunction::sample(grid, [](double t) { return std::cos(pi * t + pi / 2.0); });
            for (int i = 1; i <= n; ++i) {
                const double a = -2.0 + 4.0 * i / n;
                raw.push_back(warping_from_density(grid, [a](double t) {
                    return std::abs(3.0 * std::sin(2.0 * pi * a * t) + 2.0 * std::cos(a * t)) + 0.1;
                }));
            }
            break;
        }
    }

    CenteredWarpings centered = center_warpings(raw);

    std::mt19937_64 rng(spec.seed);
    std::normal_distribution<double> noise(0.0, 1.0);
    std::vector<GridFunction> obs;
    obs.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        GridFunction f = h + action(g, centered.warpings[static_cast<std::size_t>(i)]);
        if (spec.sigma > 0.0) {
            std::vector<double> v(f.values().begin(), f.values().end());
            for (double& x : v) x += spec.sigma * noise(rng);
            f = GridFunction(grid, std::move(v));
        }
        obs.push_back(std::move(f));
    }

    const OrthonormalBasis basis = build_orthonormal(designated_basis(spec.scenario), grid);
    SyntheticPanel panel{spec, std::move(obs), h, g, std::move(centered.warpings), std::move(raw),
                         basis.coefficients(g)};
    return panel;
}

std::vector<double> fluctuation(std::span<const double> rates) {
    if (rates.size() < 2) throw std::invalid_argument("fluctuation: need at least 2 rates");
    for (std::size_t k = 0; k < rates.size(); ++k)
        if (!(rates[k] > 0.0))
            throw std::invalid_argument("fluctuation: rate at index " + std::to_string(k) +
                                        " is not positive");
    std::vector<double> out(rates.size() - 1);
    for (std::size_t k = 0; k + 1 < rates.size(); ++k)
        out[k] = (rates[k + 1] - rates[k]) / rates[k] * 100.0;
    return out;
}

}  // namespace warptrend
