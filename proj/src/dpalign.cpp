#include "warptrend/dpalign.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "warptrend/kernels.hpp"

namespace warptrend {

std::vector<LatticeStep> coprime_neighborhood(int max_step) {
    std::vector<LatticeStep> out;
    for (int dx = 1; dx <= max_step; ++dx)
        for (int dy = 1; dy <= max_step; ++dy)
            if (std::gcd(dx, dy) == 1) out.push_back({dx, dy});
    return prioritized(std::move(out));
}

std::vector<LatticeStep> prioritized(std::vector<LatticeStep> steps) {
    std::stable_sort(steps.begin(), steps.end(), [](LatticeStep a, LatticeStep b) {
        const int da = std::abs(a.dx - a.dy);
        const int db = std::abs(b.dx - b.dy);
        if (da != db) return da < db;
        return a.dx < b.dx;
    });
    return steps;
}

void DpConfig::validate() const {
    if (neighborhood.empty()) throw std::invalid_argument("DpConfig: empty neighborhood");
    if (neighborhood.size() > 254) throw std::invalid_argument("DpConfig: neighborhood too large");
    for (const LatticeStep& s : neighborhood)
        if (s.dx < 1 || s.dy < 1 || s.dx > kMaxStep || s.dy > kMaxStep)
            throw std::invalid_argument("DpConfig: steps must lie in [1, 7] on both axes");
    if (lattice_size != 0 && lattice_size < 2)
        throw std::invalid_argument("DpConfig: lattice_size must be >= 2");
}

int DpConfig::resolved_lattice_size(std::size_t grid_size) const {
    const int requested = lattice_size > 0 ? lattice_size : static_cast<int>(grid_size);
    return std::clamp(requested, 2, kMaxLatticeSize);
}

AlignmentProblem::AlignmentProblem(const GridFunction& q, const GridFunction& r, int lattice_size)
    : r_values_(r.values().begin(), r.values().end()),
      n_(lattice_size),
      delta_(1.0 / static_cast<double>(lattice_size - 1)),
      q_samples_(static_cast<std::size_t>(lattice_size)) {
    require_same_grid(q.grid(), r.grid(), "dp_align");
    if (lattice_size < 2) throw std::invalid_argument("AlignmentProblem: lattice too small");
    const double denom = static_cast<double>(n_ - 1);
    for (int i = 0; i < n_; ++i)
        q_samples_[static_cast<std::size_t>(i)] =
            interpolate_uniform(q.values(), static_cast<double>(i) / denom);
}

void AlignmentProblem::segment_template(int j, LatticeStep step, std::vector<double>& out) const {
    out.resize(static_cast<std::size_t>(step.dx) + 1);
    const double slope = static_cast<double>(step.dy) / static_cast<double>(step.dx);
    const double scale = std::sqrt(slope);
    const double denom = static_cast<double>(n_ - 1);
    for (int a = 0; a <= step.dx; ++a) {
        const double y = (static_cast<double>(j) + static_cast<double>(a) * slope) / denom;
        out[static_cast<std::size_t>(a)] = interpolate_uniform(r_values_, y) * scale;
    }
}

double AlignmentProblem::segment_cost(LatticeNode a, LatticeNode b) const {
    const LatticeStep step{b.i - a.i, b.j - a.j};
    if (step.dx <= 0 || step.dy <= 0)
        throw std::invalid_argument("segment_cost: segment is not monotone");
    if (a.i < 0 || a.j < 0 || b.i >= n_ || b.j >= n_)
        throw std::out_of_range("segment_cost: node outside lattice");
    std::vector<double> tmpl;
    segment_template(a.j, step, tmpl);
    const double* qs = q_samples_.data() + a.i;
    // same operation order as the relaxation kernels
    double d = qs[0] - tmpl[0];
    double acc = 0.5 * (d * d);
    for (int k = 1; k < step.dx; ++k) {
        d = qs[k] - tmpl[static_cast<std::size_t>(k)];
        acc = std::fma(d, d, acc);
    }
    d = qs[step.dx] - tmpl[static_cast<std::size_t>(step.dx)];
    acc = acc + 0.5 * (d * d);
    return acc * delta_;
}

double segment_cost(const GridFunction& q, const GridFunction& r, LatticeNode a, LatticeNode b,
                    int lattice_size) {
    return AlignmentProblem(q, r, lattice_size).segment_cost(a, b);
}

Warping path_to_warping(const std::vector<LatticeNode>& path, int lattice_size, const Grid& grid) {
    const double denom = static_cast<double>(lattice_size - 1);
    std::vector<double> v(grid.size());
    std::size_t s = 0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double t = grid[k];
        while (s + 2 < path.size() && static_cast<double>(path[s + 1].i) / denom < t) ++s;
        const double x0 = path[s].i / denom;
        const double x1 = path[s + 1].i / denom;
        const double y0 = path[s].j / denom;
        const double y1 = path[s + 1].j / denom;
        const double w = std::clamp((t - x0) / (x1 - x0), 0.0, 1.0);
        v[k] = y0 + w * (y1 - y0);
    }
    return Warping::repaired(grid, std::move(v));
}

AlignResult dp_align(const GridFunction& q, const GridFunction& r, const DpConfig& cfg) {
    cfg.validate();
    const int n = cfg.resolved_lattice_size(q.size());
    const AlignmentProblem problem(q, r, n);
    const std::vector<LatticeStep> steps = prioritized(cfg.neighborhood);

    const std::size_t nn = static_cast<std::size_t>(n);
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> acc(nn * nn, inf);
    std::vector<std::uint8_t> choice(nn * nn, 0xFF);
    acc[0] = 0.0;

    // steepest and shallowest slopes bound which nodes can still reach (1,1)
    LatticeStep steep = steps[0], shallow = steps[0];
    for (const LatticeStep& st : steps) {
        if (st.dy * steep.dx > steep.dy * st.dx) steep = st;
        if (st.dy * shallow.dx < shallow.dy * st.dx) shallow = st;
    }

    // finite entries of each finished row lie in [lo, hi]
    std::vector<int> lo(nn, n), hi(nn, -1);
    lo[0] = 0;
    hi[0] = 0;

    const kernels::KernelTable& kern = kernels::active_kernels();
    std::vector<double> tmpl;
    for (int row = 1; row < n; ++row) {
        double* best = acc.data() + static_cast<std::size_t>(row) * nn;
        std::uint8_t* best_choice = choice.data() + static_cast<std::size_t>(row) * nn;
        const int rem_y = n - 1 - row;
        const int rem_x_min = (rem_y * steep.dx + steep.dy - 1) / steep.dy;
        const int rem_x_max = rem_y * shallow.dx / shallow.dy;
        const int kmin = std::max(0, n - 1 - rem_x_max);
        const int kmax = n - 1 - rem_x_min;
        for (std::size_t s = 0; s < steps.size(); ++s) {
            const LatticeStep st = steps[s];
            if (st.dy > row || st.dx >= n) continue;
            const int from = row - st.dy;
            if (hi[static_cast<std::size_t>(from)] < 0) continue;
            const int begin = std::max({st.dx, lo[static_cast<std::size_t>(from)] + st.dx, kmin});
            const int end = std::min({n - 1, hi[static_cast<std::size_t>(from)] + st.dx, kmax}) + 1;
            if (begin >= end) continue;
            problem.segment_template(from, st, tmpl);
            kernels::DpRelaxArgs args{acc.data() + static_cast<std::size_t>(from) * nn,
                                      problem.q_samples().data(),
                                      tmpl.data(),
                                      st.dx,
                                      problem.spacing(),
                                      best,
                                      best_choice,
                                      static_cast<std::uint8_t>(s),
                                      static_cast<std::size_t>(begin),
                                      static_cast<std::size_t>(end)};
            kern.dp_relax(args);
        }
        for (int k = 0; k < n; ++k) {
            if (std::isfinite(best[k])) {
                lo[static_cast<std::size_t>(row)] = std::min(lo[static_cast<std::size_t>(row)], k);
                hi[static_cast<std::size_t>(row)] = k;
            }
        }
    }

    const double total = acc[nn * nn - 1];
    if (!std::isfinite(total))
        throw NumericalError("dp_align: no monotone lattice path reaches (1,1) with this neighborhood");

    std::vector<LatticeNode> path{{n - 1, n - 1}};
    while (!(path.back().i == 0 && path.back().j == 0)) {
        const LatticeNode cur = path.back();
        const std::uint8_t id = choice[static_cast<std::size_t>(cur.j) * nn + static_cast<std::size_t>(cur.i)];
        if (id == 0xFF) throw NumericalError("dp_align: broken back-pointer");
        path.push_back({cur.i - steps[id].dx, cur.j - steps[id].dy});
    }
    std::reverse(path.begin(), path.end());
    return {path_to_warping(path, n, q.grid()), total, std::move(path)};
}

}  // namespace warptrend
