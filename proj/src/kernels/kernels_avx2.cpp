#include <immintrin.h>

#include <cmath>

#include "warptrend/kernels.hpp"

namespace warptrend::kernels {
namespace {

double dot_avx2(const double* a, const double* b, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
        acc1 = _mm256_add_pd(acc1,
                             _mm256_mul_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4)));
    }
    acc0 = _mm256_add_pd(acc0, acc1);
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc0);
    double acc = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
    for (; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

inline __m256d segment_cost4(const DpRelaxArgs& args, std::size_t i, __m256d half) {
    const int p = args.p;
    __m256d d = _mm256_sub_pd(_mm256_loadu_pd(args.q_samples + i), _mm256_set1_pd(args.seg_r[0]));
    __m256d acc = _mm256_mul_pd(half, _mm256_mul_pd(d, d));
    for (int a = 1; a < p; ++a) {
        d = _mm256_sub_pd(_mm256_loadu_pd(args.q_samples + i + a), _mm256_set1_pd(args.seg_r[a]));
        acc = _mm256_fmadd_pd(d, d, acc);
    }
    d = _mm256_sub_pd(_mm256_loadu_pd(args.q_samples + i + p), _mm256_set1_pd(args.seg_r[p]));
    return _mm256_add_pd(acc, _mm256_mul_pd(half, _mm256_mul_pd(d, d)));
}

inline void commit4(const DpRelaxArgs& args, std::size_t k, __m256d cand) {
    const __m256d cur = _mm256_loadu_pd(args.best + k);
    const __m256d better = _mm256_cmp_pd(cand, cur, _CMP_LT_OQ);
    const int mask = _mm256_movemask_pd(better);
    if (mask == 0) return;
    _mm256_storeu_pd(args.best + k, _mm256_blendv_pd(cur, cand, better));
    for (int lane = 0; lane < 4; ++lane)
        if (mask & (1 << lane)) args.choice[k + lane] = args.step_id;
}

// Consecutive target nodes per vector, two vectors in flight; same arithmetic
// sequence per lane as the scalar kernel.
void dp_relax_avx2(const DpRelaxArgs& args) {
    const int p = args.p;
    const std::size_t offset = static_cast<std::size_t>(p);
    const __m256d half = _mm256_set1_pd(0.5);
    const __m256d delta = _mm256_set1_pd(args.delta);

    std::size_t k = args.begin;
    for (; k + 16 <= args.end; k += 16) {
        const std::size_t i = k - offset;
        const __m256d acc0 = segment_cost4(args, i, half);
        const __m256d acc1 = segment_cost4(args, i + 4, half);
        const __m256d acc2 = segment_cost4(args, i + 8, half);
        const __m256d acc3 = segment_cost4(args, i + 12, half);
        commit4(args, k, _mm256_add_pd(_mm256_loadu_pd(args.prev_row + i), _mm256_mul_pd(acc0, delta)));
        commit4(args, k + 4,
                _mm256_add_pd(_mm256_loadu_pd(args.prev_row + i + 4), _mm256_mul_pd(acc1, delta)));
        commit4(args, k + 8,
                _mm256_add_pd(_mm256_loadu_pd(args.prev_row + i + 8), _mm256_mul_pd(acc2, delta)));
        commit4(args, k + 12,
                _mm256_add_pd(_mm256_loadu_pd(args.prev_row + i + 12), _mm256_mul_pd(acc3, delta)));
    }
    for (; k + 8 <= args.end; k += 8) {
        const std::size_t i = k - offset;
        const __m256d acc0 = segment_cost4(args, i, half);
        const __m256d acc1 = segment_cost4(args, i + 4, half);
        commit4(args, k, _mm256_add_pd(_mm256_loadu_pd(args.prev_row + i), _mm256_mul_pd(acc0, delta)));
        commit4(args, k + 4,
                _mm256_add_pd(_mm256_loadu_pd(args.prev_row + i + 4), _mm256_mul_pd(acc1, delta)));
    }
    for (; k + 4 <= args.end; k += 4) {
        const std::size_t i = k - offset;
        const __m256d acc = segment_cost4(args, i, half);
        commit4(args, k, _mm256_add_pd(_mm256_loadu_pd(args.prev_row + i), _mm256_mul_pd(acc, delta)));
    }
    for (; k < args.end; ++k) {
        const std::size_t i = k - offset;
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

const KernelTable& avx2_kernels() {
    static const KernelTable table{"avx2", &dot_avx2, &dp_relax_avx2};
    return table;
}

}  // namespace warptrend::kernels
