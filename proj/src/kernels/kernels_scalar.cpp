#include <cmath>

#include "warptrend/kernels.hpp"

namespace warptrend::kernels {
namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

void dp_relax_scalar(const DpRelaxArgs& args) {
    const int p = args.p;
    for (std::size_t k = args.begin; k < args.end; ++k) {
        const std::size_t i = k - static_cast<std::size_t>(p);
        double d = args.q_samples[i] - args.seg_r[0];
        double acc = 0.5 * (d * d);
        for (int a = 1; a < p; ++a) {
            d = args.q_samples[i + a] - args.seg_r[a];
            acc = std::fma(d, d, acc);
        }
        d = args.q_samples[i + p] - args.seg_r[p];
        acc = acc + 0.5 * (d * d);
        const double cand = args.prev_row[i] + acc * args.delta;
        if (cand < args.best[k]) {
            args.best[k] = cand;
            args.choice[k] = args.step_id;
        }
    }
}

}  // namespace

const KernelTable& scalar_kernels() {
    static const KernelTable table{"scalar", &dot_scalar, &dp_relax_scalar};
    return table;
}

}  // namespace warptrend::kernels
