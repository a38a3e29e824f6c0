#pragma once

#include <functional>

namespace qh {

// Worker count: QH_THREADS if set to a positive integer, else the hardware concurrency.
int thread_count();

// Runs body(i) for i in [0, n).  Each index is handled exactly once; callers write results
// into per-index slots so output never depends on scheduling.
void parallel_for(int n, const std::function<void(int)>& body);

}  // namespace qh
