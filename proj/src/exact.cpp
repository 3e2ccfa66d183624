#include "pprtopk/exact.hpp"

#include <cmath>
#include <sstream>

namespace pprtopk {

namespace {

int auto_iteration_cap(double tol, double c) {
  // l1 distance shrinks by c per sweep from an initial gap <= 2.
  double iters = std::log(tol / 2.0) / std::log(c);
  return static_cast<int>(std::ceil(iters)) + 16;
}

}  // namespace

PprVector solve_ppr(const TransitionView& view, NodeId start, double damping,
                    double tol, int max_iters) {
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  if (start >= view.node_count())
    throw std::invalid_argument("start node out of range");
  const NodeId n = view.node_count();
  const double c = damping;
  if (max_iters <= 0) max_iters = auto_iteration_cap(tol, c);

  std::vector<double> x(n, 0.0);
  std::vector<double> next(n, 0.0);
  x[start] = 1.0;

  double diff = 0.0;
  for (int iter = 0; iter < max_iters; ++iter) {
    std::fill(next.begin(), next.end(), 0.0);
    for (NodeId v = 0; v < n; ++v) {
      double mass = x[v];
      if (mass == 0.0) continue;
      auto nbrs = view.neighbors(v);
      double w = c * mass / static_cast<double>(nbrs.size());
      for (NodeId dst : nbrs) next[dst] += w;
    }
    next[start] += 1.0 - c;

    diff = 0.0;
    for (NodeId v = 0; v < n; ++v) diff += std::fabs(next[v] - x[v]);
    x.swap(next);
    if (diff <= tol) {
      PprVector out;
      out.seed = start;
      out.damping = c;
      out.scores = std::move(x);
      return out;
    }
  }
  std::ostringstream msg;
  msg << "PPR iteration did not reach tol=" << tol << " within " << max_iters
      << " sweeps (last step moved " << diff << ")";
  throw SolveError(msg.str(), diff);
}

PprVector solve_ppr(const Graph& g, const WalkConfig& cfg, double tol,
                    int max_iters) {
  TransitionView view(g, cfg);
  return solve_ppr(view, cfg.seed_node, cfg.damping, tol, max_iters);
}

ResolventEntry resolvent_entry(const Graph& g, const WalkConfig& cfg, NodeId i,
                               NodeId j, double tol) {
  if (i >= g.node_count() || j >= g.node_count())
    throw std::invalid_argument("resolvent_entry: node out of range");
  TransitionView view(g, cfg);
  PprVector from_i = solve_ppr(view, i, cfg.damping, tol);
  ResolventEntry entry;
  entry.from = i;
  entry.to = j;
  entry.value = from_i.scores[j] / (1.0 - cfg.damping);
  return entry;
}

}  // namespace pprtopk
