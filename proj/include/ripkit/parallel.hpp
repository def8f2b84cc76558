#pragma once

#include <cstddef>
#include <functional>

namespace ripkit {

// Worker count: RIPKIT_THREADS when set to a positive integer, otherwise the
// hardware concurrency (at least 1).
std::size_t worker_count();

// Calls fn(i) for every i in [0, count) across worker_count() threads. Work
// is handed out one index at a time; callers write results into slot i so
// the outcome does not depend on scheduling. The first exception thrown by
// any task is rethrown after all workers stop.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace ripkit
