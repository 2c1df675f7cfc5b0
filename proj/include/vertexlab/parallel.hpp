#pragma once

#include <cstddef>
#include <functional>

namespace vertexlab {

/// Worker count from VERTEXLAB_THREADS (default 1, never below 1).
unsigned thread_count();

/// Runs body(i) for i in [0, n) across thread_count() workers.
/// Callers write results into slot i so aggregation order never depends on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

} // namespace vertexlab
