#pragma once

#include <functional>

namespace hesc {

// Worker count: the HESC_THREADS environment variable when set to a positive
// integer, otherwise the hardware concurrency (at least 1).
int thread_count();

// Runs fn(i) for every i in [0, n) across the workers, blocking until done.
// The index partition is deterministic; execution order across workers is
// not, so fn must write only to per-index slots for reproducible results.
// Exceptions from workers are rethrown (first one wins).
void parallel_for(long n, const std::function<void(long)>& fn);

}  // namespace hesc
