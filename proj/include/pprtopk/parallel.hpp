#pragma once

#include <cstdint>
#include <functional>

namespace pprtopk {

/// Worker count to use: `requested` if positive, else the
/// PPRTOPK_THREADS environment variable, else the hardware count.
int resolve_threads(int requested);

/// Splits [0, total) into one contiguous chunk per worker and runs
/// body(worker_index, begin, end) on each. Chunk boundaries depend only
/// on `total` and the resolved worker count is invisible to callers
/// that key their randomness on the global item index.
void parallel_chunks(std::uint64_t total, int threads,
                     const std::function<void(int, std::uint64_t,
                                              std::uint64_t)>& body);

}  // namespace pprtopk
