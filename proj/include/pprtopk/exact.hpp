#pragma once

#include <stdexcept>
#include <vector>

#include "pprtopk/graph.hpp"

namespace pprtopk {

/// Dense Personalized PageRank vector for one (seed, damping) pair.
struct PprVector {
  NodeId seed = 0;
  double damping = 0.0;
  std::vector<double> scores;

  NodeId node_count() const { return static_cast<NodeId>(scores.size()); }
};

/// Expected visit count z_ij of the restart-free walk, i.e. entry (i,j)
/// of the resolvent [I - cP]^{-1}.
struct ResolventEntry {
  NodeId from = 0;
  NodeId to = 0;
  double value = 0.0;
};

class SolveError : public std::runtime_error {
 public:
  SolveError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

/// Power-style iteration x <- c x P + (1-c) 1_seed from x0 = 1_seed.
/// Converges geometrically with factor c; max_iters = 0 picks a cap
/// from that rate. Throws SolveError (carrying the last residual) if
/// the cap is hit first.
PprVector solve_ppr(const Graph& g, const WalkConfig& cfg, double tol = 1e-12,
                    int max_iters = 0);

/// Same iteration over a prebuilt transition view; `start` overrides
/// the personalization node while the view (incl. the dangling target)
/// stays fixed. This is what keeps multi-seed resolvent reads
/// consistent with a single transition matrix.
PprVector solve_ppr(const TransitionView& view, NodeId start, double damping,
                    double tol = 1e-12, int max_iters = 0);

ResolventEntry resolvent_entry(const Graph& g, const WalkConfig& cfg, NodeId i,
                               NodeId j, double tol = 1e-12);

}  // namespace pprtopk
