#pragma once

#include <cstddef>
#include <functional>

namespace swarm {

/// Worker cap from SWARM_THREADS (0 or unset = hardware concurrency).
unsigned worker_count();

/// Calls body(i) for i in [0, n), split into contiguous chunks across workers.
/// body must only write to state owned by index i.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body,
                  std::size_t min_per_worker = 64);

}  // namespace swarm
