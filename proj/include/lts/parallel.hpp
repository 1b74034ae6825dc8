#pragma once

// Minimal fork-join helper. The worker count is process-wide.

#include <cstddef>
#include <functional>

namespace lts {

void set_thread_count(unsigned n);  // 0 selects hardware concurrency
unsigned thread_count();

// Calls body(i) for i in [0, n); iterations are split into contiguous chunks.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace lts
