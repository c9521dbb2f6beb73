#pragma once

#include <cstddef>
#include <functional>

namespace warptrend {

/// Worker count used by parallel_for; WARPTREND_THREADS overrides the
/// hardware concurrency.
unsigned default_thread_count();

/// Runs fn(0..n-1) across threads. Callers write results into per-index
/// slots, so the outcome does not depend on scheduling. If any call throws,
/// the exception from the lowest index is rethrown after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn, unsigned threads = 0);

}  // namespace warptrend
