#pragma once

#include <cstddef>
#include <functional>

namespace clab {

/// Worker cap from COMPACTON_LAB_THREADS (0 or unset = hardware concurrency).
int thread_budget();

/// Runs fn(0..count-1) on up to `max_threads` workers (<=0 = thread_budget()).
/// Each index must be independent; results keyed by index are deterministic
/// regardless of the worker count.
void parallel_for_index(std::size_t count, const std::function<void(std::size_t)>& fn,
                        int max_threads = 0);

}  // namespace clab
