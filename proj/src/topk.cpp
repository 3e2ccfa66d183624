#include "pprtopk/topk.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "pprtopk/rng.hpp"

namespace pprtopk {

namespace {

void sort_entries(std::vector<TopKEntry>& entries) {
  std::sort(entries.begin(), entries.end(),
            [](const TopKEntry& a, const TopKEntry& b) {
              if (a.score != b.score) return a.score > b.score;
              return a.id < b.id;
            });
}

}  // namespace

std::vector<NodeId> TopKReport::ids() const {
  std::vector<NodeId> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.id);
  return out;
}

TopKReport top_k(const PprVector& v, NodeId k) {
  const auto n = static_cast<NodeId>(v.scores.size());
  if (k < 1 || k > n)
    throw std::invalid_argument("k must lie in [1, node count]");
  std::vector<TopKEntry> entries;
  entries.reserve(n);
  for (NodeId i = 0; i < n; ++i) entries.push_back({i, v.scores[i]});
  sort_entries(entries);
  entries.resize(k);

  TopKReport report;
  report.kind = TopKKind::basket;
  report.k_requested = k;
  report.entries = std::move(entries);
  return report;
}

TopKReport top_k(const MCEstimate& est, NodeId k) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  std::vector<TopKEntry> entries;
  entries.reserve(est.pi_hat.size());
  for (const auto& [node, score] : est.pi_hat) entries.push_back({node, score});
  sort_entries(entries);
  if (entries.size() > k) entries.resize(k);

  TopKReport report;
  report.kind = TopKKind::basket;
  report.k_requested = k;
  report.truncated = entries.size() < k;
  report.entries = std::move(entries);
  return report;
}

BasketComparison compare_baskets(const TopKReport& truth,
                                 const TopKReport& estimate) {
  if (truth.k_requested != estimate.k_requested)
    throw std::invalid_argument("baskets compare only at equal k");
  if (truth.entries.size() != truth.k_requested)
    throw std::invalid_argument("truth basket is incomplete");

  std::unordered_set<NodeId> truth_ids;
  for (const auto& e : truth.entries) truth_ids.insert(e.id);

  BasketComparison cmp;
  cmp.k = truth.k_requested;
  for (const auto& e : estimate.entries)
    if (truth_ids.count(e.id)) ++cmp.correct;
  cmp.erroneous = cmp.k - cmp.correct;

  const auto limit = std::min(truth.entries.size(), estimate.entries.size());
  while (cmp.list_correct_prefix < limit &&
         truth.entries[cmp.list_correct_prefix].id ==
             estimate.entries[cmp.list_correct_prefix].id)
    ++cmp.list_correct_prefix;
  return cmp;
}

bool satisfies_relaxation(const BasketComparison& cmp, NodeId l) {
  if (l > cmp.k) throw std::invalid_argument("l must not exceed k");
  return cmp.correct >= cmp.k - l;
}

std::vector<CurveRow> convergence_curve(const Graph& g, const WalkConfig& cfg,
                                        McMethod method, NodeId k,
                                        std::span<const std::uint64_t> m_grid,
                                        std::uint32_t repeats,
                                        std::uint64_t rng_seed, int threads) {
  if (repeats < 1) throw std::invalid_argument("repeats must be at least 1");
  for (auto m : m_grid)
    if (m < 1) throw std::invalid_argument("m grid entries must be positive");

  const PprVector exact = solve_ppr(g, cfg);
  const TopKReport truth = top_k(exact, k);

  std::vector<CurveRow> rows;
  rows.reserve(m_grid.size());
  for (std::size_t gi = 0; gi < m_grid.size(); ++gi) {
    const std::uint64_t m = m_grid[gi];
    double sum = 0.0, sum_sq = 0.0;
    for (std::uint32_t rep = 0; rep < repeats; ++rep) {
      std::uint64_t seed =
          mix64(mix64(rng_seed ^ (gi + 1)) ^ (static_cast<std::uint64_t>(rep) + 1));
      WalkOutcome outcome =
          method == McMethod::end_point
              ? run_end_point(g, cfg, m, seed, threads)
              : run_complete_path(g, cfg, m, seed, threads);
      auto correct = static_cast<double>(
          compare_baskets(truth, top_k(estimate(outcome, cfg), k)).correct);
      sum += correct;
      sum_sq += correct * correct;
    }
    CurveRow row;
    row.m = m;
    row.mean_correct = sum / repeats;
    row.std_correct =
        repeats > 1
            ? std::sqrt(std::max(0.0, (sum_sq - sum * sum / repeats) /
                                          (repeats - 1)))
            : 0.0;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace pprtopk
