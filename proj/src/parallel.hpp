// parallel.hpp - static-chunked parallel loop over an index range

#pragma once

#include <cstddef>
#include <functional>

namespace wgqed {

/// 0 means "use hardware concurrency".
void set_thread_limit(unsigned threads);
unsigned thread_limit();

/// Runs body(i) for i in [0, n). Chunks are contiguous so results written by
/// index are independent of the thread count. The exception from the lowest failing
/// index is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace wgqed
