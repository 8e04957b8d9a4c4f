#pragma once

#include <cstddef>
#include <functional>

namespace lagrtori {

/// Worker count: hardware concurrency, capped by the LAGRTORI_THREADS environment variable.
unsigned worker_count();

/// Calls fn(i) for i in [0, n) across worker_count() threads. fn must only write to
/// slot i of caller-owned storage so results stay in index order. The first exception
/// thrown by any task is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace lagrtori
