// parallel.hpp: index-parallel loop with a bounded worker pool

#pragma once

#include <cstddef>
#include <functional>

namespace wqed::runner {

/// Worker count: WQED_THREADS when set to a positive integer, else hardware concurrency (>= 1).
std::size_t worker_count();

/// Calls body(i) for i in [0, n) on up to `workers` threads (0 = worker_count()).
/// The first exception thrown by any call is rethrown after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body, std::size_t workers = 0);

} // namespace wqed::runner
