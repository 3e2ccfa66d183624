#pragma once

#include <cstdint>
#include <unordered_map>

#include "pprtopk/graph.hpp"

namespace pprtopk {

enum class McMethod { end_point, complete_path };

/// Raw counts accumulated over m walk runs: end-point hits for
/// end_point, total visit counts (including the seed's time-0 visit
/// and the terminal node) for complete_path.
struct WalkOutcome {
  McMethod method = McMethod::end_point;
  std::uint64_t runs = 0;
  std::uint64_t rng_seed = 0;
  std::unordered_map<NodeId, std::uint64_t> counts;

  std::uint64_t count(NodeId v) const {
    auto it = counts.find(v);
    return it == counts.end() ? 0 : it->second;
  }
};

/// Estimates derived from a WalkOutcome: hits/m for end_point,
/// (1-c) * visits / m for complete_path. Nodes never visited are
/// absent and read as 0.
struct MCEstimate {
  McMethod method = McMethod::end_point;
  std::uint64_t runs = 0;
  std::unordered_map<NodeId, double> pi_hat;

  double at(NodeId v) const {
    auto it = pi_hat.find(v);
    return it == pi_hat.end() ? 0.0 : it->second;
  }
};

/// m runs recording only the terminal node of each walk. Run r draws
/// from the stream keyed by (rng_seed, r), so the outcome is identical
/// for every thread count.
WalkOutcome run_end_point(const Graph& g, const WalkConfig& cfg,
                          std::uint64_t m, std::uint64_t rng_seed,
                          int threads = 0);

/// m runs recording every visited node.
WalkOutcome run_complete_path(const Graph& g, const WalkConfig& cfg,
                              std::uint64_t m, std::uint64_t rng_seed,
                              int threads = 0);

MCEstimate estimate(const WalkOutcome& outcome, const WalkConfig& cfg);

struct AdaptiveResult {
  WalkOutcome outcome;
  std::uint64_t stopped_at_m = 0;
  bool cap_reached = false;
};

/// Runs walks in batches until the count of the rank-k node exceeds the
/// count of the rank-(k+1) node by at least gap_d, or m_cap runs have
/// been spent (reported via cap_reached, not an error). Run streams are
/// numbered globally, so stopping at m leaves exactly the same counts
/// as a plain m-run invocation with the same seed.
AdaptiveResult run_adaptive(const Graph& g, const WalkConfig& cfg, NodeId k,
                            std::uint64_t gap_d, std::uint64_t batch,
                            std::uint64_t m_cap, std::uint64_t rng_seed,
                            McMethod method = McMethod::end_point,
                            int threads = 0);

}  // namespace pprtopk
