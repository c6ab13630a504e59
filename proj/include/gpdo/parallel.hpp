#pragma once

#include <cstddef>
#include <functional>

namespace gpdo {

// Worker cap shared by all parallel loops; 0 means hardware concurrency.
void set_max_threads(unsigned n);
unsigned max_threads();

// Runs body(i) for i in [begin, end) on up to max_threads() workers, static chunking.
// Each index is visited exactly once, so results written per index are independent of
// the worker count.
void parallel_for(std::size_t begin, std::size_t end, const std::function<void(std::size_t)>& body);

}  // namespace gpdo
