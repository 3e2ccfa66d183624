#include "pprtopk/mc.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "pprtopk/parallel.hpp"
#include "pprtopk/rng.hpp"

namespace pprtopk {

namespace {

// One run of the stopping random walk. Calls visit(node) for every
// occupied state, the start and the terminal node included, and
// returns the node the walk stopped at. A single uniform draw per step
// decides both continuation and the next neighbor: conditioned on
// u < c, u/c is again uniform.
template <typename Visit>
NodeId walk_once(const TransitionView& view, NodeId start, double c,
                 RunRng& rng, Visit&& visit) {
  NodeId node = start;
  visit(node);
  for (;;) {
    double u = rng.next_double();
    if (u >= c) return node;
    auto nbrs = view.neighbors(node);
    auto idx = static_cast<std::size_t>(u / c * static_cast<double>(nbrs.size()));
    if (idx >= nbrs.size()) idx = nbrs.size() - 1;  // guard the u/c rounding edge
    node = nbrs[idx];
    visit(node);
  }
}

void accumulate_runs(const TransitionView& view, NodeId start, double c,
                     McMethod method, std::uint64_t run_begin,
                     std::uint64_t run_end, std::uint64_t rng_seed, int threads,
                     std::vector<std::uint64_t>& counts) {
  const std::uint64_t total = run_end - run_begin;
  const int workers = resolve_threads(threads);
  std::vector<std::vector<std::uint64_t>> partial(
      workers, std::vector<std::uint64_t>(view.node_count(), 0));

  parallel_chunks(total, workers, [&](int w, std::uint64_t lo,
                                      std::uint64_t hi) {
    auto& local = partial[w];
    if (method == McMethod::end_point) {
      for (std::uint64_t r = lo; r < hi; ++r) {
        RunRng rng(rng_seed, run_begin + r);
        NodeId end = walk_once(view, start, c, rng, [](NodeId) {});
        ++local[end];
      }
    } else {
      for (std::uint64_t r = lo; r < hi; ++r) {
        RunRng rng(rng_seed, run_begin + r);
        walk_once(view, start, c, rng, [&](NodeId v) { ++local[v]; });
      }
    }
  });

  for (const auto& local : partial)
    for (NodeId v = 0; v < view.node_count(); ++v) counts[v] += local[v];
}

WalkOutcome to_outcome(McMethod method, std::uint64_t m, std::uint64_t rng_seed,
                       const std::vector<std::uint64_t>& counts) {
  WalkOutcome out;
  out.method = method;
  out.runs = m;
  out.rng_seed = rng_seed;
  for (NodeId v = 0; v < counts.size(); ++v)
    if (counts[v] > 0) out.counts.emplace(v, counts[v]);
  return out;
}

WalkOutcome run_method(const Graph& g, const WalkConfig& cfg, std::uint64_t m,
                       std::uint64_t rng_seed, McMethod method, int threads) {
  if (m < 1) throw std::invalid_argument("m must be at least 1");
  TransitionView view(g, cfg);
  std::vector<std::uint64_t> counts(view.node_count(), 0);
  accumulate_runs(view, cfg.seed_node, cfg.damping, method, 0, m, rng_seed,
                  threads, counts);
  return to_outcome(method, m, rng_seed, counts);
}

// Counts of the rank-k and rank-(k+1) nodes under (count desc, id asc)
// ordering; missing ranks read as zero.
std::pair<std::uint64_t, std::uint64_t> rank_counts(
    const std::vector<std::uint64_t>& counts, NodeId k) {
  std::vector<NodeId> order(counts.size());
  std::iota(order.begin(), order.end(), 0);
  std::size_t want = std::min<std::size_t>(k + 1, order.size());
  std::partial_sort(order.begin(), order.begin() + want, order.end(),
                    [&](NodeId a, NodeId b) {
                      if (counts[a] != counts[b]) return counts[a] > counts[b];
                      return a < b;
                    });
  std::uint64_t at_k = counts[order[k - 1]];
  std::uint64_t at_k1 = k < order.size() ? counts[order[k]] : 0;
  return {at_k, at_k1};
}

}  // namespace

WalkOutcome run_end_point(const Graph& g, const WalkConfig& cfg,
                          std::uint64_t m, std::uint64_t rng_seed,
                          int threads) {
  return run_method(g, cfg, m, rng_seed, McMethod::end_point, threads);
}

WalkOutcome run_complete_path(const Graph& g, const WalkConfig& cfg,
                              std::uint64_t m, std::uint64_t rng_seed,
                              int threads) {
  return run_method(g, cfg, m, rng_seed, McMethod::complete_path, threads);
}

MCEstimate estimate(const WalkOutcome& outcome, const WalkConfig& cfg) {
  if (outcome.runs == 0)
    throw std::invalid_argument("estimate: empty outcome");
  MCEstimate est;
  est.method = outcome.method;
  est.runs = outcome.runs;
  const double inv_m = 1.0 / static_cast<double>(outcome.runs);
  const double scale = outcome.method == McMethod::end_point
                           ? inv_m
                           : (1.0 - cfg.damping) * inv_m;
  est.pi_hat.reserve(outcome.counts.size());
  for (const auto& [node, count] : outcome.counts)
    est.pi_hat.emplace(node, scale * static_cast<double>(count));
  return est;
}

AdaptiveResult run_adaptive(const Graph& g, const WalkConfig& cfg, NodeId k,
                            std::uint64_t gap_d, std::uint64_t batch,
                            std::uint64_t m_cap, std::uint64_t rng_seed,
                            McMethod method, int threads) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  if (gap_d < 1) throw std::invalid_argument("gap_d must be at least 1");
  if (batch < 1) throw std::invalid_argument("batch must be at least 1");
  if (m_cap < 1) throw std::invalid_argument("m_cap must be at least 1");
  if (k > g.node_count()) throw std::invalid_argument("k exceeds node count");

  TransitionView view(g, cfg);
  std::vector<std::uint64_t> counts(view.node_count(), 0);

  std::uint64_t done = 0;
  bool gap_met = false;
  while (done < m_cap) {
    std::uint64_t next = std::min(m_cap, done + batch);
    accumulate_runs(view, cfg.seed_node, cfg.damping, method, done, next,
                    rng_seed, threads, counts);
    done = next;
    auto [at_k, at_k1] = rank_counts(counts, k);
    if (at_k >= at_k1 + gap_d) {
      gap_met = true;
      break;
    }
  }

  AdaptiveResult result;
  result.outcome = to_outcome(method, done, rng_seed, counts);
  result.stopped_at_m = done;
  result.cap_reached = !gap_met;
  return result;
}

}  // namespace pprtopk
