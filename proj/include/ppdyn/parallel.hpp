// Index-parallel loop capped by the TOOL_THREADS environment variable.
#pragma once

#include <cstddef>
#include <functional>

namespace ppdyn {

/// Hardware concurrency (at least 1), capped by TOOL_THREADS when it is a
/// positive integer.
unsigned worker_count();

/// Calls fn(i) for i in [0, n). Results must be written to per-index slots;
/// the first exception thrown by any call is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

/// Same with an explicit worker count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn, unsigned max_workers);

}  // namespace ppdyn
