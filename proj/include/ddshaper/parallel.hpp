#pragma once

#include <cstddef>
#include <functional>

namespace ddshaper {

// Worker count: DD_SHAPER_THREADS when set to a positive integer, otherwise
// the hardware concurrency.
int thread_count();

// Calls body(i) for i in [0, n). Indices are split into contiguous blocks, one
// per worker; every output point is computed by exactly one call so results do
// not depend on the worker count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace ddshaper
