#pragma once
// Static-partition parallel loops. Results are written by index and reduced
// afterwards in a fixed order, so output never depends on the thread count.

#include <cstddef>
#include <functional>

namespace lhybrid {

/// Threads used when a call passes 0. Defaults to hardware_concurrency.
unsigned default_threads();
void set_default_threads(unsigned n);

/// Calls body(i) for i in [0, n) on `threads` workers (0 = default), each
/// worker owning one contiguous block. The first exception is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body, unsigned threads = 0);

}  // namespace lhybrid
