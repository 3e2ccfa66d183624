#include "pprtopk/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace pprtopk {

namespace {

const char* misrank_kind_name(MisrankKind kind) {
  switch (kind) {
    case MisrankKind::pairwise_exact_multinomial:
      return "pairwise-exact-multinomial";
    case MisrankKind::pairwise_clt:
      return "pairwise-clt";
    case MisrankKind::basket_bonferroni:
      return "basket-bonferroni";
    case MisrankKind::list_bonferroni:
      return "list-bonferroni";
  }
  return "unknown";
}

}  // namespace

json to_json(const PprVector& v) {
  return json{{"seed", v.seed}, {"damping", v.damping}, {"scores", v.scores}};
}

PprVector ppr_from_json(const json& j) {
  PprVector v;
  v.seed = j.at("seed").get<NodeId>();
  v.damping = j.at("damping").get<double>();
  v.scores = j.at("scores").get<std::vector<double>>();
  return v;
}

std::string to_tsv(const PprVector& v) {
  std::string out;
  char row[64];
  for (NodeId i = 0; i < v.scores.size(); ++i) {
    std::snprintf(row, sizeof(row), "%u\t%.17g\n", i, v.scores[i]);
    out += row;
  }
  return out;
}

json to_json(const WalkOutcome& o) {
  json counts = json::object();
  for (const auto& [node, count] : o.counts)
    counts[std::to_string(node)] = count;
  return json{{"method", method_name(o.method)},
              {"runs", o.runs},
              {"rng_seed", o.rng_seed},
              {"counts", counts}};
}

WalkOutcome outcome_from_json(const json& j) {
  WalkOutcome o;
  o.method = method_from_name(j.at("method").get<std::string>());
  o.runs = j.at("runs").get<std::uint64_t>();
  o.rng_seed = j.at("rng_seed").get<std::uint64_t>();
  for (const auto& [key, value] : j.at("counts").items())
    o.counts.emplace(static_cast<NodeId>(std::stoul(key)),
                     value.get<std::uint64_t>());
  return o;
}

json to_json(const MCEstimate& e) {
  json pi = json::object();
  for (const auto& [node, value] : e.pi_hat) pi[std::to_string(node)] = value;
  return json{{"method", method_name(e.method)},
              {"runs", e.runs},
              {"pi_hat", pi}};
}

json to_json(const TopKReport& r) {
  json entries = json::array();
  for (const auto& e : r.entries)
    entries.push_back(json{{"id", e.id}, {"score", e.score}});
  return json{{"kind", r.kind == TopKKind::list ? "list" : "basket"},
              {"k", r.k_requested},
              {"truncated", r.truncated},
              {"entries", entries}};
}

json to_json(const MisrankBound& b) {
  return json{{"kind", misrank_kind_name(b.kind)}, {"value", b.value},
              {"raw", b.raw},                      {"k", b.k},
              {"m", b.m},                          {"j_star", b.j_star}};
}

json to_json(const Clustering& c) {
  json merges = json::array();
  for (auto p : c.provenance)
    merges.push_back(p == MergeProvenance::structure ? "structure" : "content");
  return json{{"clusters", c.clusters}, {"merges", merges}};
}

std::string method_name(McMethod m) {
  return m == McMethod::end_point ? "end-point" : "complete-path";
}

McMethod method_from_name(const std::string& name) {
  if (name == "end-point" || name == "endpoint") return McMethod::end_point;
  if (name == "complete-path") return McMethod::complete_path;
  throw std::invalid_argument("unknown method: " + name);
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace pprtopk
