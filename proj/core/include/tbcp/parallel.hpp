#pragma once

// Minimal fork-join loop used by the assembly kernels.

#include <cstddef>
#include <functional>

namespace tbcp {

// Worker count for parallelFor; defaults to the hardware concurrency.
int threadCount();
void setThreadCount(int n);

// Calls body(i) for i in [begin, end) using contiguous chunks per worker.
void parallelFor(std::size_t begin, std::size_t end, const std::function<void(std::size_t)>& body);

}  // namespace tbcp
