#pragma once

#include <cstddef>
#include <functional>

namespace dpplab {

/// Worker count: DPPLAB_THREADS if set to a positive integer, else the hardware concurrency.
unsigned thread_count();

/// Runs body(i) for i in [0, count). Iterations must be independent; each
/// index is executed exactly once. Exceptions from workers are rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace dpplab
