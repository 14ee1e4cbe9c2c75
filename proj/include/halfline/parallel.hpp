#pragma once

#include <cstddef>
#include <functional>

namespace halfline {

/// Worker count: hardware concurrency, capped by HALFLINE_THREADS when set.
unsigned worker_count();

/// Runs body(i) for i in [0, n) on up to worker_count() threads. Each index
/// runs exactly once; the first exception thrown is rethrown to the caller.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace halfline
