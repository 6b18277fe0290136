#pragma once

#include <cstddef>
#include <functional>

namespace famfeat {

/// Worker count from FAMFEAT_THREADS, else hardware concurrency (at least 1).
std::size_t thread_count();

/// Runs body(i) for i in [0, n). Each index is processed exactly once; callers
/// write results into per-index slots so output never depends on scheduling.
/// The first exception thrown by any body is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace famfeat
