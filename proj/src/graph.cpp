#include "pprtopk/graph.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace pprtopk {

namespace {

struct ParsedLine {
  std::uint64_t a = 0;
  std::uint64_t b = 0;
  bool has_b = false;
  std::string rest;  // for string-valued second columns
};

bool is_skippable(const std::string& line) {
  for (char ch : line) {
    if (ch == '#') return true;
    if (!std::isspace(static_cast<unsigned char>(ch))) return false;
  }
  return true;  // blank
}

std::uint64_t parse_id(const std::string& token, const std::string& path,
                       std::size_t line_no) {
  std::uint64_t value = 0;
  auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    std::ostringstream msg;
    msg << path << ":" << line_no << ": expected integer id, got '" << token
        << "'";
    throw std::runtime_error(msg.str());
  }
  return value;
}

// Splits a line into whitespace-separated tokens.
std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

}  // namespace

Graph Graph::from_edges(NodeId node_count,
                        std::vector<std::pair<NodeId, NodeId>> edges) {
  for (const auto& [src, dst] : edges) {
    if (src >= node_count || dst >= node_count)
      throw std::invalid_argument("edge endpoint out of range");
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  Graph g;
  g.n_ = node_count;
  g.offsets_.assign(node_count + 1, 0);
  g.targets_.reserve(edges.size());
  for (const auto& [src, dst] : edges) ++g.offsets_[src + 1];
  for (NodeId v = 0; v < node_count; ++v) g.offsets_[v + 1] += g.offsets_[v];
  for (const auto& [src, dst] : edges) g.targets_.push_back(dst);
  return g;
}

void Graph::set_hosts(const std::vector<std::string>& per_node) {
  if (per_node.size() != n_)
    throw std::invalid_argument("set_hosts: need one host per node");
  host_ids_.assign(n_, 0);
  host_names_.clear();
  std::unordered_map<std::string, std::uint32_t> intern;
  for (NodeId v = 0; v < n_; ++v) {
    auto [it, inserted] = intern.try_emplace(
        per_node[v], static_cast<std::uint32_t>(host_names_.size()));
    if (inserted) host_names_.push_back(per_node[v]);
    host_ids_[v] = it->second;
  }
}

void Graph::set_labels(std::vector<std::string> per_node) {
  if (per_node.size() != n_)
    throw std::invalid_argument("set_labels: need one label per node");
  labels_ = std::move(per_node);
}

Graph load_edge_list(const std::string& path, std::optional<NodeId> n_hint) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open edge list: " + path);

  std::vector<std::pair<NodeId, NodeId>> edges;
  std::uint64_t max_id = 0;
  bool saw_edge = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_skippable(line)) continue;
    auto tokens = tokenize(line);
    if (tokens.size() != 2) {
      std::ostringstream msg;
      msg << path << ":" << line_no << ": expected 'src<TAB>dst', got "
          << tokens.size() << " tokens";
      throw std::runtime_error(msg.str());
    }
    std::uint64_t src = parse_id(tokens[0], path, line_no);
    std::uint64_t dst = parse_id(tokens[1], path, line_no);
    max_id = std::max({max_id, src, dst});
    edges.emplace_back(static_cast<NodeId>(src), static_cast<NodeId>(dst));
    saw_edge = true;
  }
  if (!saw_edge) throw std::runtime_error("empty edge list: " + path);

  NodeId n = static_cast<NodeId>(max_id + 1);
  if (n_hint) n = std::max(n, *n_hint);
  return Graph::from_edges(n, std::move(edges));
}

void write_edge_list(const Graph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write edge list: " + path);
  for (NodeId v = 0; v < g.node_count(); ++v)
    for (NodeId dst : g.out_edges(v)) out << v << '\t' << dst << '\n';
  if (!out) throw std::runtime_error("write failed: " + path);
}

namespace {

// Shared reader for "id<TAB>string" sidecar files.
std::vector<std::string> load_sidecar(const Graph& g, const std::string& path,
                                      const char* what) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error(std::string("cannot open ") + what + ": " + path);
  std::vector<std::string> values(g.node_count());
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_skippable(line)) continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos) {
      std::ostringstream msg;
      msg << path << ":" << line_no << ": expected 'node_id<TAB>value'";
      throw std::runtime_error(msg.str());
    }
    std::uint64_t id = parse_id(line.substr(0, tab), path, line_no);
    if (id >= g.node_count()) {
      std::ostringstream msg;
      msg << path << ":" << line_no << ": node id " << id << " out of range";
      throw std::runtime_error(msg.str());
    }
    values[id] = line.substr(tab + 1);
  }
  return values;
}

}  // namespace

void load_hosts(Graph& g, const std::string& path) {
  g.set_hosts(load_sidecar(g, path, "host file"));
}

void load_labels(Graph& g, const std::string& path) {
  g.set_labels(load_sidecar(g, path, "label file"));
}

void validate_config(const Graph& g, const WalkConfig& cfg) {
  if (!(cfg.damping > 0.0 && cfg.damping < 1.0))
    throw std::invalid_argument("damping must be in (0,1)");
  if (cfg.seed_node >= g.node_count())
    throw std::invalid_argument("seed node out of range");
  if (cfg.edge_filter == EdgeFilter::cross_host_only && !g.has_hosts())
    throw std::invalid_argument(
        "cross_host_only filter requires per-node hosts");
}

std::vector<NodeId> effective_out_neighbors(const Graph& g, NodeId v,
                                            const WalkConfig& cfg) {
  if (v >= g.node_count()) throw std::invalid_argument("node out of range");
  if (cfg.edge_filter == EdgeFilter::cross_host_only && !g.has_hosts())
    throw std::invalid_argument(
        "cross_host_only filter requires per-node hosts");
  std::vector<NodeId> out;
  auto edges = g.out_edges(v);
  if (cfg.edge_filter == EdgeFilter::all) {
    out.assign(edges.begin(), edges.end());
  } else {
    for (NodeId dst : edges)
      if (g.host_of(dst) != g.host_of(v)) out.push_back(dst);
  }
  if (out.empty()) {
    out.push_back(cfg.dangling_policy == DanglingPolicy::self_loop
                      ? v
                      : cfg.seed_node);
  }
  return out;
}

std::vector<std::pair<NodeId, double>> transition_row(const Graph& g, NodeId v,
                                                      const WalkConfig& cfg) {
  auto neighbors = effective_out_neighbors(g, v, cfg);
  double w = 1.0 / static_cast<double>(neighbors.size());
  std::vector<std::pair<NodeId, double>> row;
  row.reserve(neighbors.size());
  for (NodeId dst : neighbors) row.emplace_back(dst, w);
  return row;
}

TransitionView::TransitionView(const Graph& g, const WalkConfig& cfg) {
  validate_config(g, cfg);
  n_ = g.node_count();
  offsets_.assign(n_ + 1, 0);
  targets_.reserve(g.edge_count());
  for (NodeId v = 0; v < n_; ++v) {
    std::size_t before = targets_.size();
    auto edges = g.out_edges(v);
    if (cfg.edge_filter == EdgeFilter::all) {
      targets_.insert(targets_.end(), edges.begin(), edges.end());
    } else {
      for (NodeId dst : edges)
        if (g.host_of(dst) != g.host_of(v)) targets_.push_back(dst);
    }
    if (targets_.size() == before) {
      targets_.push_back(cfg.dangling_policy == DanglingPolicy::self_loop
                             ? v
                             : cfg.seed_node);
    }
    offsets_[v + 1] = targets_.size();
  }
}

}  // namespace pprtopk
