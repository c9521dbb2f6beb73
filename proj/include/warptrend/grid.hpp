#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace warptrend {

/// Raised when two objects that must share a sampling grid do not.
class GridMismatch : public std::invalid_argument {
public:
    explicit GridMismatch(const std::string& what)
        : std::invalid_argument("incompatible sampling: " + what) {}
};

/// Uniform partition of [0,1] with m samples.
class Grid {
public:
    explicit Grid(std::size_t m);

    std::size_t size() const noexcept { return m_; }
    double spacing() const noexcept { return step_; }
    double operator[](std::size_t j) const noexcept { return points_[j]; }
    std::span<const double> points() const noexcept { return points_; }

    friend bool operator==(const Grid& a, const Grid& b) noexcept { return a.m_ == b.m_; }

private:
    std::size_t m_;
    double step_;
    std::vector<double> points_;
};

/// A real function sampled on a Grid.
class GridFunction {
public:
    GridFunction(Grid grid, std::vector<double> values);
    static GridFunction zeros(const Grid& grid);
    static GridFunction constant(const Grid& grid, double c);

    template <typename F>
    static GridFunction sample(const Grid& grid, F&& fn) {
        std::vector<double> v(grid.size());
        for (std::size_t j = 0; j < grid.size(); ++j) v[j] = fn(grid[j]);
        return GridFunction(grid, std::move(v));
    }

    const Grid& grid() const noexcept { return grid_; }
    std::size_t size() const noexcept { return values_.size(); }
    std::span<const double> values() const noexcept { return values_; }
    double operator[](std::size_t j) const noexcept { return values_[j]; }

    GridFunction& operator+=(const GridFunction& o);
    GridFunction& operator-=(const GridFunction& o);
    GridFunction& operator*=(double s);

    friend GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
    friend GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }
    friend GridFunction operator*(GridFunction a, double s) { return a *= s; }
    friend GridFunction operator*(double s, GridFunction a) { return a *= s; }

    /// Adds s*o in place.
    GridFunction& axpy(double s, const GridFunction& o);

private:
    Grid grid_;
    std::vector<double> values_;
};

void require_same_grid(const Grid& a, const Grid& b, const char* where);

/// Trapezoidal approximation of the L2 inner product on [0,1].
double inner_product(const GridFunction& a, const GridFunction& b);
double norm(const GridFunction& a);

/// Trapezoidal integral over [0,1].
double integral(const GridFunction& a);

/// Piecewise-linear interpolation of samples on a uniform [0,1] grid.
/// Throws std::domain_error when t is outside [0,1].
double eval_at(const GridFunction& a, double t);
double interpolate_uniform(std::span<const double> values, double t);

/// Second-order finite differences; requires m >= 3.
GridFunction derivative(const GridFunction& a);

GridFunction mean_function(std::span<const GridFunction> fs);

/// Rescales `times` affinely onto [0,1] and interpolates onto `target`.
GridFunction resample_to_grid(std::span<const double> values, std::span<const double> times,
                              const Grid& target);

}  // namespace warptrend
