#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace pprtopk {

using NodeId = std::uint32_t;

/// What a walker does at a node with no usable out-edge.
enum class DanglingPolicy { self_loop, jump_to_seed };

/// Which out-edges a walker may follow.
enum class EdgeFilter { all, cross_host_only };

/// Parameters shared by the exact solver and the Monte Carlo walkers.
/// Both sides must use the same config, otherwise they estimate
/// different stationary distributions.
struct WalkConfig {
  double damping = 0.85;  // continuation probability c, in (0,1)
  NodeId seed_node = 0;
  DanglingPolicy dangling_policy = DanglingPolicy::self_loop;
  EdgeFilter edge_filter = EdgeFilter::all;
};

/// Immutable directed graph in compressed out-adjacency form.
/// Adjacency lists are sorted and duplicate-free; optional per-node
/// host labels drive the cross-host edge filter.
class Graph {
 public:
  Graph() = default;

  /// Build from an edge list. Edges are deduplicated and sorted,
  /// self-loops are kept. Throws std::invalid_argument on an endpoint
  /// >= node_count.
  static Graph from_edges(NodeId node_count,
                          std::vector<std::pair<NodeId, NodeId>> edges);

  NodeId node_count() const { return n_; }
  std::size_t edge_count() const { return targets_.size(); }

  std::span<const NodeId> out_edges(NodeId v) const {
    return {targets_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }
  NodeId out_degree(NodeId v) const {
    return static_cast<NodeId>(offsets_[v + 1] - offsets_[v]);
  }

  bool has_hosts() const { return !host_ids_.empty(); }
  /// Interned host id of a node; valid only when has_hosts().
  std::uint32_t host_of(NodeId v) const { return host_ids_[v]; }
  const std::string& host_name(std::uint32_t host_id) const {
    return host_names_[host_id];
  }
  /// Assigns one host string per node (size must equal node_count).
  void set_hosts(const std::vector<std::string>& per_node);

  bool has_labels() const { return !labels_.empty(); }
  const std::string& label_of(NodeId v) const { return labels_[v]; }
  void set_labels(std::vector<std::string> per_node);

  bool operator==(const Graph& other) const {
    return n_ == other.n_ && offsets_ == other.offsets_ &&
           targets_ == other.targets_;
  }

 private:
  NodeId n_ = 0;
  std::vector<std::size_t> offsets_{0};  // length n_ + 1
  std::vector<NodeId> targets_;
  std::vector<std::uint32_t> host_ids_;   // empty unless hosts are set
  std::vector<std::string> host_names_;   // interned host strings
  std::vector<std::string> labels_;       // empty unless labels are set
};

/// Reads a tab-separated "src<TAB>dst" edge list with 0-based ids.
/// Lines starting with '#' and blank lines are skipped. The node count
/// is 1 + max id seen, widened to n_hint when that is larger. Throws
/// std::runtime_error (with the line number) on malformed input and on
/// an empty file.
Graph load_edge_list(const std::string& path,
                     std::optional<NodeId> n_hint = std::nullopt);

/// Writes the graph back in the same edge-list format.
void write_edge_list(const Graph& g, const std::string& path);

/// Reads "node_id<TAB>host_string" lines; nodes absent from the file
/// get the empty host.
void load_hosts(Graph& g, const std::string& path);

/// Reads "node_id<TAB>label" lines.
void load_labels(Graph& g, const std::string& path);

/// Throws std::invalid_argument if cfg is unusable for g.
void validate_config(const Graph& g, const WalkConfig& cfg);

/// Out-neighbors of v after edge filtering, with the dangling policy
/// applied when the filtered list is empty: self_loop yields {v},
/// jump_to_seed yields {cfg.seed_node}. Deterministic and order-stable.
std::vector<NodeId> effective_out_neighbors(const Graph& g, NodeId v,
                                            const WalkConfig& cfg);

/// Uniform transition probabilities over the effective neighbors.
std::vector<std::pair<NodeId, double>> transition_row(const Graph& g, NodeId v,
                                                      const WalkConfig& cfg);

/// Materialized transition structure for one (graph, config) pair.
/// Every node has at least one neighbor (the dangling policy is baked
/// in), so the solver and the walkers can share it without re-checking
/// filters on every step.
class TransitionView {
 public:
  TransitionView(const Graph& g, const WalkConfig& cfg);

  NodeId node_count() const { return n_; }
  std::span<const NodeId> neighbors(NodeId v) const {
    return {targets_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }

 private:
  NodeId n_ = 0;
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> targets_;
};

}  // namespace pprtopk
