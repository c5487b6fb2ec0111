#pragma once

#include <cstddef>
#include <functional>

namespace sos {

// Number of worker threads: min(hardware_concurrency, 8), overridable with the
// SOS_SCOUT_THREADS environment variable (1 disables threading entirely).
int worker_count();

// Runs fn(i) for i in [0, n). Work is split into contiguous blocks; each item
// writes only to its own slot, so results are identical to the sequential
// order regardless of thread count. Exceptions propagate (first one wins).
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace sos
