#include "pprtopk/disambig.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "pprtopk/mc.hpp"
#include "pprtopk/rng.hpp"

namespace pprtopk {

namespace {

const std::unordered_set<std::string>& stopwords() {
  static const std::unordered_set<std::string> words = {
      "a",   "an",  "and",  "are",  "as",   "at",   "be",   "but", "by",
      "for", "from", "had",  "has",  "have", "he",   "her",  "his", "i",
      "if",  "in",  "into", "is",   "it",   "its",  "no",   "not", "of",
      "on",  "or",  "our",  "she",  "so",   "that", "the",  "their",
      "them", "then", "they", "this", "to",  "was",  "we",   "were",
      "when", "who", "will", "with", "you"};
  return words;
}

std::unordered_map<std::string, double> term_frequencies(
    const CorpusPage& page) {
  std::unordered_map<std::string, double> tf;
  if (page.tokens.empty()) return tf;
  const double unit = 1.0 / static_cast<double>(page.tokens.size());
  for (const auto& t : page.tokens) tf[t] += unit;
  return tf;
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent[b] = a;
    return true;
  }
};

void sort_clusters(std::vector<std::vector<NodeId>>& clusters) {
  for (auto& c : clusters) std::sort(c.begin(), c.end());
  std::sort(clusters.begin(), clusters.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
}

}  // namespace

const CorpusPage* Corpus::page(NodeId id) const {
  auto it = std::lower_bound(
      pages.begin(), pages.end(), id,
      [](const CorpusPage& p, NodeId target) { return p.id < target; });
  return it != pages.end() && it->id == id ? &*it : nullptr;
}

std::vector<NodeId> Corpus::person_pages() const {
  std::vector<NodeId> out;
  for (const auto& p : pages)
    if (p.is_person_page) out.push_back(p.id);
  return out;
}

std::vector<std::string> preprocess_text(const std::string& text) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (!current.empty() && !stopwords().count(current))
      tokens.push_back(current);
    current.clear();
  };
  for (unsigned char ch : text) {
    if (std::isalnum(ch))
      current.push_back(static_cast<char>(std::tolower(ch)));
    else
      flush();
  }
  flush();
  return tokens;
}

Corpus load_corpus_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);

  Corpus corpus;
  std::string line;
  std::size_t line_no = 0;
  NodeId max_id = 0;
  std::vector<std::pair<NodeId, NodeId>> edges;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;

    nlohmann::json rec;
    try {
      rec = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": " +
                               e.what());
    }
    for (const char* field : {"id", "host", "text", "person", "outlinks"})
      if (!rec.contains(field))
        throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                 ": missing field '" + field + "'");

    CorpusPage page;
    try {
      page.id = rec["id"].get<NodeId>();
      page.host = rec["host"].get<std::string>();
      page.tokens = preprocess_text(rec["text"].get<std::string>());
      page.is_person_page = rec["person"].get<bool>();
      page.outlinks = rec["outlinks"].get<std::vector<NodeId>>();
    } catch (const nlohmann::json::exception& e) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": " +
                               e.what());
    }
    max_id = std::max(max_id, page.id);
    for (NodeId target : page.outlinks) {
      max_id = std::max(max_id, target);
      edges.emplace_back(page.id, target);
    }
    corpus.pages.push_back(std::move(page));
  }
  if (corpus.pages.empty()) return corpus;  // empty corpus is valid

  std::sort(corpus.pages.begin(), corpus.pages.end(),
            [](const CorpusPage& a, const CorpusPage& b) { return a.id < b.id; });
  for (std::size_t i = 1; i < corpus.pages.size(); ++i)
    if (corpus.pages[i].id == corpus.pages[i - 1].id)
      throw std::runtime_error(path + ": duplicate page id " +
                               std::to_string(corpus.pages[i].id));

  corpus.graph = Graph::from_edges(max_id + 1, std::move(edges));
  std::vector<std::string> hosts(corpus.graph.node_count());
  for (const auto& p : corpus.pages) hosts[p.id] = p.host;
  corpus.graph.set_hosts(hosts);
  return corpus;
}

double cosine_similarity(const PageProfile& a, const PageProfile& b) {
  const PageProfile& small = a.terms.size() <= b.terms.size() ? a : b;
  const PageProfile& large = a.terms.size() <= b.terms.size() ? b : a;
  std::unordered_map<std::string, double> weights;
  for (const auto& [term, w] : large.terms) weights.emplace(term, w);
  double dot = 0.0;
  for (const auto& [term, w] : small.terms) {
    auto it = weights.find(term);
    if (it != weights.end()) dot += w * it->second;
  }
  return dot;  // profiles are unit vectors (or empty, giving 0)
}

TopKReport related_pages(const Graph& g, NodeId page, NodeId k, double damping,
                         std::uint64_t m, std::uint64_t rng_seed) {
  WalkConfig cfg;
  cfg.damping = damping;
  cfg.seed_node = page;
  cfg.dangling_policy = DanglingPolicy::self_loop;
  cfg.edge_filter = EdgeFilter::cross_host_only;

  MCEstimate est = estimate(run_end_point(g, cfg, m, rng_seed), cfg);
  est.pi_hat.erase(page);
  return top_k(est, k);
}

Clustering structure_cluster(const std::map<NodeId, std::set<NodeId>>& related,
                             std::size_t min_overlap) {
  std::vector<NodeId> persons;
  persons.reserve(related.size());
  for (const auto& [id, _] : related) persons.push_back(id);

  UnionFind uf(persons.size());
  Clustering result;
  for (std::size_t i = 0; i < persons.size(); ++i) {
    for (std::size_t j = i + 1; j < persons.size(); ++j) {
      const auto& a = related.at(persons[i]);
      const auto& b = related.at(persons[j]);
      std::size_t overlap = 0;
      for (auto it = a.begin(), jt = b.begin();
           it != a.end() && jt != b.end();) {
        if (*it < *jt)
          ++it;
        else if (*jt < *it)
          ++jt;
        else {
          ++overlap;
          ++it;
          ++jt;
        }
      }
      if (overlap >= min_overlap && uf.unite(i, j))
        result.provenance.push_back(MergeProvenance::structure);
    }
  }

  std::map<std::size_t, std::vector<NodeId>> components;
  for (std::size_t i = 0; i < persons.size(); ++i)
    components[uf.find(i)].push_back(persons[i]);
  for (auto& [_, members] : components)
    result.clusters.push_back(std::move(members));
  sort_clusters(result.clusters);
  return result;
}

PageProfile reweight_profile(const CorpusPage& person,
                             const std::vector<const CorpusPage*>& related) {
  PageProfile profile;
  profile.page = person.id;
  auto tf = term_frequencies(person);
  if (tf.empty()) return profile;

  std::vector<const CorpusPage*> ordered = related;
  std::sort(ordered.begin(), ordered.end(),
            [](const CorpusPage* a, const CorpusPage* b) {
              return a->id < b->id;
            });
  std::unordered_map<std::string, double> boost;
  for (const CorpusPage* r : ordered)
    for (const auto& [term, w] : term_frequencies(*r)) boost[term] += w;

  profile.terms.reserve(tf.size());
  for (const auto& [term, w] : tf) {
    auto it = boost.find(term);
    double factor = 1.0 + (it == boost.end() ? 0.0 : it->second);
    profile.terms.emplace_back(term, w * factor);
  }
  std::sort(profile.terms.begin(), profile.terms.end(),
            [](const auto& a, const auto& b) {
              if (a.second != b.second) return a.second > b.second;
              return a.first < b.first;
            });
  if (profile.terms.size() > 30) profile.terms.resize(30);

  double norm_sq = 0.0;
  for (const auto& [_, w] : profile.terms) norm_sq += w * w;
  const double inv_norm = 1.0 / std::sqrt(norm_sq);
  for (auto& [_, w] : profile.terms) w *= inv_norm;
  return profile;
}

Clustering content_cluster(const Clustering& base,
                           const std::map<NodeId, PageProfile>& profiles,
                           double threshold) {
  if (!(threshold >= 0.0 && threshold <= 1.0))
    throw std::invalid_argument("threshold must lie in [0, 1]");

  static const PageProfile empty_profile;
  auto profile_of = [&](NodeId id) -> const PageProfile& {
    auto it = profiles.find(id);
    return it == profiles.end() ? empty_profile : it->second;
  };

  Clustering result = base;
  sort_clusters(result.clusters);
  auto& clusters = result.clusters;
  while (clusters.size() > 1) {
    double best = -1.0;
    std::size_t best_i = 0, best_j = 0;
    for (std::size_t i = 0; i < clusters.size(); ++i) {
      for (std::size_t j = i + 1; j < clusters.size(); ++j) {
        double total = 0.0;
        for (NodeId a : clusters[i])
          for (NodeId b : clusters[j])
            total += cosine_similarity(profile_of(a), profile_of(b));
        double avg = total / static_cast<double>(clusters[i].size() *
                                                 clusters[j].size());
        if (avg > best) {
          best = avg;
          best_i = i;
          best_j = j;
        }
      }
    }
    if (best < threshold - 1e-12) break;
    auto& into = clusters[best_i];
    into.insert(into.end(), clusters[best_j].begin(), clusters[best_j].end());
    std::sort(into.begin(), into.end());
    clusters.erase(clusters.begin() + best_j);
    result.provenance.push_back(MergeProvenance::content);
    sort_clusters(clusters);
  }
  return result;
}

DisambigResult run_disambig(const Corpus& corpus,
                            const DisambigParams& params) {
  DisambigResult result;
  for (NodeId person : corpus.person_pages()) {
    std::uint64_t seed =
        mix64(params.rng_seed ^ (static_cast<std::uint64_t>(person) + 1));
    TopKReport report = related_pages(corpus.graph, person, params.related_k,
                                      params.damping, params.walks_m, seed);
    auto ids = report.ids();
    result.related.emplace(person, std::set<NodeId>(ids.begin(), ids.end()));
  }

  Clustering base = structure_cluster(result.related, params.min_overlap);
  if (!params.content_stage) {
    result.clustering = std::move(base);
    return result;
  }

  for (const auto& [person, related_set] : result.related) {
    std::vector<const CorpusPage*> related_records;
    for (NodeId id : related_set)
      if (const CorpusPage* p = corpus.page(id)) related_records.push_back(p);
    result.profiles.emplace(
        person, reweight_profile(*corpus.page(person), related_records));
  }
  result.clustering =
      content_cluster(base, result.profiles, params.hac_threshold);
  return result;
}

}  // namespace pprtopk
