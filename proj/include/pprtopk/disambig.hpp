#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "pprtopk/graph.hpp"
#include "pprtopk/topk.hpp"

namespace pprtopk {

struct CorpusPage {
  NodeId id = 0;
  std::string host;
  std::vector<std::string> tokens;  // preprocessed, lowercase
  bool is_person_page = false;
  std::vector<NodeId> outlinks;
};

/// Offline corpus: one page per node plus the induced link graph with
/// host labels attached.
struct Corpus {
  std::vector<CorpusPage> pages;  // ordered by id
  Graph graph;

  const CorpusPage* page(NodeId id) const;
  std::vector<NodeId> person_pages() const;
};

/// Lowercases, strips punctuation and drops stopwords.
std::vector<std::string> preprocess_text(const std::string& text);

/// Parses a JSON-lines corpus: one object per line with fields
/// id, host, text, person, outlinks. Throws std::runtime_error with
/// the line number on malformed records.
Corpus load_corpus_jsonl(const std::string& path);

/// Up to 30 (term, weight) pairs, L2-normalized when nonempty.
struct PageProfile {
  NodeId page = 0;
  std::vector<std::pair<std::string, double>> terms;
};

double cosine_similarity(const PageProfile& a, const PageProfile& b);

/// Cross-host Monte Carlo end-point top-k of related pages for one
/// person page; the seed itself is excluded from the result.
TopKReport related_pages(const Graph& g, NodeId page, NodeId k, double damping,
                         std::uint64_t m, std::uint64_t rng_seed);

enum class MergeProvenance { structure, content };

struct Clustering {
  std::vector<std::vector<NodeId>> clusters;  // sorted members, sorted by front
  std::vector<MergeProvenance> provenance;    // one entry per performed merge
};

/// Union-find merge of person pages whose related sets share at least
/// min_overlap pages.
Clustering structure_cluster(const std::map<NodeId, std::set<NodeId>>& related,
                             std::size_t min_overlap = 1);

/// Term re-weighting against the related pages: every related page r
/// votes tf(t) -> tf(t) + tf(t) * tf_r(t), applied against the original
/// scores so the result does not depend on the related-page order.
/// Keeps the top 30 terms (ties by term) and L2-normalizes them.
PageProfile reweight_profile(const CorpusPage& person,
                             const std::vector<const CorpusPage*>& related);

/// Average-linkage cosine HAC seeded with the structure clustering:
/// repeatedly merges the most similar cluster pair until the best
/// similarity falls below the threshold. Never splits a base cluster.
Clustering content_cluster(const Clustering& base,
                           const std::map<NodeId, PageProfile>& profiles,
                           double threshold);

struct DisambigParams {
  NodeId related_k = 8;
  double damping = 0.2;
  std::uint64_t walks_m = 2000;
  double hac_threshold = 0.2;
  std::size_t min_overlap = 1;
  std::uint64_t rng_seed = 1;
  bool content_stage = true;
};

struct DisambigResult {
  Clustering clustering;
  std::map<NodeId, std::set<NodeId>> related;
  std::map<NodeId, PageProfile> profiles;
};

DisambigResult run_disambig(const Corpus& corpus, const DisambigParams& params);

}  // namespace pprtopk
