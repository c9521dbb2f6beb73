#include "warptrend/grid.hpp"

#include <algorithm>
#include <cmath>

#include "warptrend/kernels.hpp"

namespace warptrend {

Grid::Grid(std::size_t m) : m_(m), step_(0.0), points_(m) {
    if (m < 2) throw std::invalid_argument("Grid: need at least 2 samples");
    step_ = 1.0 / static_cast<double>(m - 1);
    for (std::size_t j = 0; j < m; ++j) points_[j] = static_cast<double>(j) * step_;
    points_.back() = 1.0;
}

GridFunction::GridFunction(Grid grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (values_.size() != grid_.size())
        throw GridMismatch("value count " + std::to_string(values_.size()) + " vs grid size " +
                           std::to_string(grid_.size()));
    for (double v : values_)
        if (!std::isfinite(v)) throw std::domain_error("GridFunction: non-finite sample");
}

GridFunction GridFunction::zeros(const Grid& grid) { return constant(grid, 0.0); }

GridFunction GridFunction::constant(const Grid& grid, double c) {
    return GridFunction(grid, std::vector<double>(grid.size(), c));
}

void require_same_grid(const Grid& a, const Grid& b, const char* where) {
    if (!(a == b))
        throw GridMismatch(std::string(where) + ": " + std::to_string(a.size()) + " vs " +
                           std::to_string(b.size()) + " samples");
}

GridFunction& GridFunction::operator+=(const GridFunction& o) {
    require_same_grid(grid_, o.grid_, "operator+");
    for (std::size_t j = 0; j < values_.size(); ++j) values_[j] += o.values_[j];
    return *this;
}

GridFunction& GridFunction::operator-=(const GridFunction& o) {
    require_same_grid(grid_, o.grid_, "operator-");
    for (std::size_t j = 0; j < values_.size(); ++j) values_[j] -= o.values_[j];
    return *this;
}

GridFunction& GridFunction::operator*=(double s) {
    for (double& v : values_) v *= s;
    return *this;
}

GridFunction& GridFunction::axpy(double s, const GridFunction& o) {
    require_same_grid(grid_, o.grid_, "axpy");
    for (std::size_t j = 0; j < values_.size(); ++j) values_[j] += s * o.values_[j];
    return *this;
}

double inner_product(const GridFunction& a, const GridFunction& b) {
    require_same_grid(a.grid(), b.grid(), "inner_product");
    const auto x = a.values();
    const auto y = b.values();
    const std::size_t m = x.size();
    const double full = kernels::active_kernels().dot(x.data(), y.data(), m);
    const double ends = 0.5 * (x[0] * y[0] + x[m - 1] * y[m - 1]);
    return (full - ends) * a.grid().spacing();
}

double norm(const GridFunction& a) { return std::sqrt(std::max(0.0, inner_product(a, a))); }

double integral(const GridFunction& a) {
    const auto x = a.values();
    double acc = 0.5 * (x.front() + x.back());
    for (std::size_t j = 1; j + 1 < x.size(); ++j) acc += x[j];
    return acc * a.grid().spacing();
}

double interpolate_uniform(std::span<const double> values, double t) {
    const std::size_t m = values.size();
    const double pos = std::clamp(t, 0.0, 1.0) * static_cast<double>(m - 1);
    const double nearest = std::round(pos);
    if (std::abs(pos - nearest) < 1e-9) return values[static_cast<std::size_t>(nearest)];
    std::size_t j = static_cast<std::size_t>(pos);
    if (j >= m - 1) return values[m - 1];
    const double frac = pos - static_cast<double>(j);
    if (frac == 0.0) return values[j];
    return values[j] + frac * (values[j + 1] - values[j]);
}

double eval_at(const GridFunction& a, double t) {
    if (!(t >= 0.0 && t <= 1.0))
        throw std::domain_error("eval_at: t = " + std::to_string(t) + " outside [0,1]");
    return interpolate_uniform(a.values(), t);
}

GridFunction derivative(const GridFunction& a) {
    const std::size_t m = a.size();
    if (m < 3) throw std::invalid_argument("derivative: need at least 3 samples");
    const auto x = a.values();
    const double inv2h = 0.5 / a.grid().spacing();
    std::vector<double> d(m);
    d[0] = (-3.0 * x[0] + 4.0 * x[1] - x[2]) * inv2h;
    for (std::size_t j = 1; j + 1 < m; ++j) d[j] = (x[j + 1] - x[j - 1]) * inv2h;
    d[m - 1] = (3.0 * x[m - 1] - 4.0 * x[m - 2] + x[m - 3]) * inv2h;
    return GridFunction(a.grid(), std::move(d));
}

GridFunction mean_function(std::span<const GridFunction> fs) {
    if (fs.empty()) throw std::invalid_argument("mean_function: empty list");
    const Grid& grid = fs.front().grid();
    std::vector<double> acc(grid.size(), 0.0);
    for (const GridFunction& f : fs) {
        require_same_grid(grid, f.grid(), "mean_function");
        const auto v = f.values();
        for (std::size_t j = 0; j < acc.size(); ++j) acc[j] += v[j];
    }
    const double inv = 1.0 / static_cast<double>(fs.size());
    // k identical inputs must average back to the input bit for bit
    for (std::size_t j = 0; j < acc.size(); ++j) {
        const double first = fs.front()[j];
        bool same = true;
        for (const GridFunction& f : fs)
            if (f[j] != first) {
                same = false;
                break;
            }
        acc[j] = same ? first : acc[j] * inv;
    }
    return GridFunction(grid, std::move(acc));
}

GridFunction resample_to_grid(std::span<const double> values, std::span<const double> times,
                              const Grid& target) {
    if (values.size() != times.size())
        throw std::invalid_argument("resample_to_grid: " + std::to_string(values.size()) +
                                    " values vs " + std::to_string(times.size()) + " times");
    if (times.size() < 2) throw std::invalid_argument("resample_to_grid: need at least 2 samples");
    for (std::size_t k = 1; k < times.size(); ++k)
        if (!(times[k] > times[k - 1]))
            throw std::invalid_argument("resample_to_grid: times not strictly increasing at index " +
                                        std::to_string(k));
    const double t0 = times.front();
    const double span = times.back() - t0;
    std::vector<double> u(times.size());
    for (std::size_t k = 0; k < times.size(); ++k) u[k] = (times[k] - t0) / span;
    u.back() = 1.0;

    std::vector<double> out(target.size());
    std::size_t k = 0;
    for (std::size_t j = 0; j < target.size(); ++j) {
        const double t = target[j];
        while (k + 2 < u.size() && u[k + 1] < t) ++k;
        const double w = (t - u[k]) / (u[k + 1] - u[k]);
        if (w <= 0.0)
            out[j] = values[k];
        else if (w >= 1.0)
            out[j] = values[k + 1];
        else
            out[j] = values[k] + w * (values[k + 1] - values[k]);
    }
    return GridFunction(target, std::move(out));
}

}  // namespace warptrend
