#pragma once

#include <cstddef>
#include <functional>

namespace fracbq {

// Number of worker threads used by parallel_for. Defaults to the hardware
// count, capped by the FRACBQ_THREADS environment variable when it is set
// to a positive integer.
int worker_count();

// Splits [0, count) into contiguous chunks and runs body(begin, end) on each,
// using worker_count() threads. Falls back to a plain loop for small counts.
void parallel_for(std::size_t count, const std::function<void(std::size_t, std::size_t)>& body);

} // namespace fracbq
