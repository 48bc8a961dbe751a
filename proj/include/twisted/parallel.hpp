#pragma once

#include <cstddef>
#include <functional>

namespace twisted {

// Worker count: TWISTED_THREADS if set and positive, else hardware concurrency (capped at 8).
unsigned worker_count();

// Runs body(i) for i in [0, n). Each index is handled by exactly one worker, so
// results written to slot i are independent of the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace twisted
