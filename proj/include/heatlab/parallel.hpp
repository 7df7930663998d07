#pragma once

#include <cstddef>
#include <functional>

namespace heatlab {

// Worker count: HEATLAB_THREADS when set to a positive integer, else hardware concurrency.
unsigned thread_count();

// Runs body(i) for i in [0, n) on up to thread_count() workers. Each index is handled
// exactly once; callers write results into per-index slots so the outcome does not depend
// on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace heatlab
