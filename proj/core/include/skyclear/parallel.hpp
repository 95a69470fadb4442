#pragma once

#include <functional>

namespace skyclear {

/// Number of worker threads used by parallel_for. 0 selects
/// hardware_concurrency. Results never depend on this value: work items are
/// independent and writes are disjoint.
void set_thread_count(int n);
int thread_count();

/// Runs fn(i) for i in [0, n) across the configured worker threads.
/// Contiguous block partitioning; deterministic for pure per-index work.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace skyclear
