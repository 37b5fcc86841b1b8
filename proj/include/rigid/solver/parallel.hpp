#pragma once

#include <cstddef>
#include <functional>

namespace rigid {

/// Worker count: explicit override, else RIGID_EMBED_THREADS, else hardware concurrency.
int thread_count();
void set_thread_count(int n);  // 0 restores the default

/// Calls fn(i) for i in [0, n) on up to thread_count() threads. Results must be written to
/// per-index slots, so the outcome does not depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace rigid
