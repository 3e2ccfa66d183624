#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pprtopk/exact.hpp"
#include "pprtopk/mc.hpp"

namespace pprtopk {

enum class TopKKind { list, basket };

struct TopKEntry {
  NodeId id = 0;
  double score = 0.0;
};

/// Ranked result: descending by score, ties broken by ascending id.
/// `entries` may be shorter than k_requested when the source is a
/// sparse estimate that visited fewer than k nodes (truncated flag).
struct TopKReport {
  TopKKind kind = TopKKind::list;
  NodeId k_requested = 0;
  std::vector<TopKEntry> entries;
  bool truncated = false;

  std::vector<NodeId> ids() const;
};

/// Top-k of an exact vector; throws std::invalid_argument unless
/// 1 <= k <= n.
TopKReport top_k(const PprVector& v, NodeId k);

/// Top-k of a sparse estimate; only visited nodes are ranked, so the
/// result may be truncated.
TopKReport top_k(const MCEstimate& est, NodeId k);

struct BasketComparison {
  NodeId k = 0;
  NodeId correct = 0;            // |truth basket ∩ estimate basket|
  NodeId erroneous = 0;          // k - correct
  NodeId list_correct_prefix = 0;  // longest common ordered prefix
};

/// Compares baskets with the same requested k; the estimate side may
/// hold fewer entries. Throws std::invalid_argument on mismatched k.
BasketComparison compare_baskets(const TopKReport& truth,
                                 const TopKReport& estimate);

bool satisfies_relaxation(const BasketComparison& cmp, NodeId l);

struct CurveRow {
  std::uint64_t m = 0;
  double mean_correct = 0.0;
  double std_correct = 0.0;
};

/// For each m in the grid, repeats independent MC estimations and
/// aggregates the number of correctly identified top-k members against
/// the exact solution.
std::vector<CurveRow> convergence_curve(const Graph& g, const WalkConfig& cfg,
                                        McMethod method, NodeId k,
                                        std::span<const std::uint64_t> m_grid,
                                        std::uint32_t repeats,
                                        std::uint64_t rng_seed,
                                        int threads = 0);

}  // namespace pprtopk
