#pragma once

#include <cstddef>
#include <functional>

namespace cbo {

/// Runs fn(i) for i in [begin, end) across up to n_threads workers.
/// n_threads == 0 means hardware concurrency. Jobs must write disjoint
/// outputs; results are then independent of scheduling. The first exception
/// thrown by a job is rethrown after all workers join.
void parallel_for(std::size_t begin, std::size_t end, std::size_t n_threads,
                  const std::function<void(std::size_t)>& fn);

}  // namespace cbo
