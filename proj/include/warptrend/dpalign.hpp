#pragma once

#include <cstddef>
#include <vector>

#include "warptrend/grid.hpp"
#include "warptrend/warping.hpp"

namespace warptrend {

/// A lattice move of `dx` cells along observation time and `dy` cells along
/// template time.
struct LatticeStep {
    int dx = 1;
    int dy = 1;
    friend bool operator==(const LatticeStep&, const LatticeStep&) = default;
};

struct LatticeNode {
    int i = 0;  // observation-time index
    int j = 0;  // template-time index
    friend bool operator==(const LatticeNode&, const LatticeNode&) = default;
};

inline constexpr int kMaxLatticeSize = 201;
inline constexpr int kMaxStep = 7;

/// All coprime (dx, dy) with 1 <= dx, dy <= max_step.
std::vector<LatticeStep> coprime_neighborhood(int max_step = kMaxStep);

struct DpConfig {
    int lattice_size = 0;  // 0 selects min(grid size, 201)
    std::vector<LatticeStep> neighborhood = coprime_neighborhood();

    void validate() const;
    int resolved_lattice_size(std::size_t grid_size) const;
};

/// Orders steps by tie-break priority: nearest the diagonal first, then
/// smaller dx.
std::vector<LatticeStep> prioritized(std::vector<LatticeStep> steps);

/// The alignment objective ‖q − (r, γ)‖² discretized on an N×N lattice.
/// Both dp_align and exhaustive searches score segments through this class so
/// their totals agree bit for bit.
class AlignmentProblem {
public:
    AlignmentProblem(const GridFunction& q, const GridFunction& r, int lattice_size);

    int lattice_size() const noexcept { return n_; }
    double spacing() const noexcept { return delta_; }
    const std::vector<double>& q_samples() const noexcept { return q_samples_; }

    /// (r ∘ γ)·√slope at the dx + 1 lattice abscissae of a segment leaving
    /// row j with the given step.
    void segment_template(int j, LatticeStep step, std::vector<double>& out) const;

    /// Trapezoidal cost of the linear warping segment from a to b.
    double segment_cost(LatticeNode a, LatticeNode b) const;

private:
    std::vector<double> r_values_;
    int n_;
    double delta_;
    std::vector<double> q_samples_;
};

double segment_cost(const GridFunction& q, const GridFunction& r, LatticeNode a, LatticeNode b,
                    int lattice_size);

struct AlignResult {
    Warping warping;
    double cost = 0.0;
    std::vector<LatticeNode> path;
};

/// Minimizes ‖q − (r, γ)‖² over monotone lattice paths from (0,0) to
/// (N-1,N-1); the path is resampled onto the grid of q.
AlignResult dp_align(const GridFunction& q, const GridFunction& r, const DpConfig& cfg = {});

/// Piecewise-linear warping through the path nodes, sampled on `grid`.
Warping path_to_warping(const std::vector<LatticeNode>& path, int lattice_size, const Grid& grid);

}  // namespace warptrend
