#pragma once

// Inner-loop kernels with a scalar reference implementation and SIMD variants
// chosen at runtime. Every variant of dp_relax must produce bitwise-identical
// output to the scalar kernel: lanes never reduce across one another and the
// per-lane operation order is fixed.

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

namespace warptrend::kernels {

/// One relaxation sweep of the alignment DP for a single step (p, q) into
/// lattice row l, reading predecessors from row l - q.
struct DpRelaxArgs {
    const double* prev_row;  // accumulated cost of row l - q, length n
    const double* q_samples; // target function on the lattice x axis, length n
    const double* seg_r;     // warped template along the segment, length p + 1
    int p;                   // horizontal step length
    double delta;            // lattice spacing
    double* best;            // accumulated cost of row l, updated in place
    std::uint8_t* choice;    // winning step id per node of row l
    std::uint8_t step_id;
    std::size_t begin;       // first target node, >= p
    std::size_t end;         // one past the last target node, <= lattice size
};

struct KernelTable {
    std::string_view name;
    double (*dot)(const double* a, const double* b, std::size_t n);
    void (*dp_relax)(const DpRelaxArgs& args);
};

const KernelTable& scalar_kernels();

/// Variants compiled into this binary and supported by the running CPU.
std::vector<const KernelTable*> available_kernels();

/// The table used by the library. Chosen once from CPU features; the
/// WARPTREND_KERNELS environment variable ("scalar", "avx2") overrides.
const KernelTable& active_kernels();

/// Overrides the active table for the rest of the process. Returns false if
/// the named variant is unavailable.
bool select_kernels(std::string_view name);

}  // namespace warptrend::kernels
