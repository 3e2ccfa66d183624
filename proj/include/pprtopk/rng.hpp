#pragma once

#include <cstdint>

namespace pprtopk {

// SplitMix64 finalizer. Good enough to decorrelate consecutive keys.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// One deterministic random stream per (base_seed, stream_index) pair.
/// Walk run r always draws from stream r regardless of which thread
/// executes it, so results are independent of the thread count.
class RunRng {
 public:
  RunRng(std::uint64_t base_seed, std::uint64_t stream_index)
      : state_(mix64(base_seed ^ mix64(stream_index ^ 0xA24BAED4963EE407ULL))) {}

  std::uint64_t next_u64() { return mix64(state_++); }

  /// Uniform double in [0, 1).
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0, bound); bound must be positive.
  std::uint64_t next_below(std::uint64_t bound) {
    // Multiply-shift; bias is negligible for the small bounds used here.
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * bound) >> 64);
  }

 private:
  std::uint64_t state_;
};

}  // namespace pprtopk
