#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pprtopk/bounds.hpp"
#include "pprtopk/disambig.hpp"
#include "pprtopk/exact.hpp"
#include "pprtopk/mc.hpp"
#include "pprtopk/serialize.hpp"
#include "pprtopk/topk.hpp"
#include "pprtopk/version.hpp"

namespace {

using namespace pprtopk;

struct GraphOpts {
  std::string graph_path;
  std::string hosts_path;
  std::string labels_path;
  NodeId seed = 0;
  double damping = 0.85;
  std::string dangling = "self-loop";
  bool cross_host = false;
};

void add_graph_opts(CLI::App* cmd, GraphOpts& o, double default_damping = 0.85) {
  o.damping = default_damping;
  cmd->add_option("--graph", o.graph_path, "edge-list TSV")->required();
  cmd->add_option("--hosts", o.hosts_path, "node<TAB>host file");
  cmd->add_option("--labels", o.labels_path, "node<TAB>label file");
  cmd->add_option("--seed", o.seed, "personalization node");
  cmd->add_option("--damping", o.damping, "continuation probability c")
      ->capture_default_str();
  cmd->add_option("--dangling", o.dangling, "self-loop | jump-to-seed")
      ->check(CLI::IsMember({"self-loop", "jump-to-seed"}))
      ->capture_default_str();
  cmd->add_flag("--cross-host", o.cross_host,
                "restrict walks to cross-host edges");
}

Graph load_graph(const GraphOpts& o) {
  Graph g = load_edge_list(o.graph_path);
  if (!o.hosts_path.empty()) load_hosts(g, o.hosts_path);
  if (!o.labels_path.empty()) load_labels(g, o.labels_path);
  return g;
}

WalkConfig make_config(const GraphOpts& o) {
  WalkConfig cfg;
  cfg.damping = o.damping;
  cfg.seed_node = o.seed;
  cfg.dangling_policy = o.dangling == "jump-to-seed"
                            ? DanglingPolicy::jump_to_seed
                            : DanglingPolicy::self_loop;
  cfg.edge_filter = o.cross_host ? EdgeFilter::cross_host_only : EdgeFilter::all;
  return cfg;
}

json graph_params(const GraphOpts& o) {
  return json{{"graph", o.graph_path},   {"hosts", o.hosts_path},
              {"labels", o.labels_path}, {"seed", o.seed},
              {"damping", o.damping},    {"dangling", o.dangling},
              {"cross_host", o.cross_host}};
}

class Timer {
 public:
  long long elapsed_ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ =
      std::chrono::steady_clock::now();
};

void write_manifest(const std::string& out_prefix, const std::string& command,
                    const json& params, const Timer& timer) {
  json m{{"command", command},
         {"version", kVersion},
         {"parameters", params},
         {"wall_time_ms", timer.elapsed_ms()}};
  write_text_file(out_prefix + ".manifest.json", m.dump(2) + "\n");
}

void write_json_output(const std::string& path, const json& j) {
  write_text_file(path, j.dump(2) + "\n");
}

std::vector<double> parse_prob_list(const std::string& csv) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= csv.size()) {
    std::size_t comma = csv.find(',', pos);
    std::string item = csv.substr(
        pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (item.empty())
      throw std::invalid_argument("empty entry in probability list");
    std::size_t used = 0;
    double v = std::stod(item, &used);
    if (used != item.size())
      throw std::invalid_argument("bad probability: " + item);
    out.push_back(v);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (out.empty()) throw std::invalid_argument("empty probability list");
  return out;
}

std::vector<std::uint64_t> parse_grid(const std::string& csv) {
  std::vector<std::uint64_t> out;
  for (double v : parse_prob_list(csv)) {
    if (v < 1.0) throw std::invalid_argument("grid entries must be >= 1");
    out.push_back(static_cast<std::uint64_t>(v));
  }
  return out;
}

// Scores from a cmd_exact TSV, sorted descending for the bound calls.
std::vector<double> scores_from_tsv(const std::string& path) {
  std::vector<double> scores;
  std::string text = read_text_file(path);
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string::npos) eol = text.size();
    std::string line = text.substr(pos, eol - pos);
    pos = eol + 1;
    if (line.empty()) continue;
    std::size_t tab = line.find('\t');
    if (tab == std::string::npos)
      throw std::runtime_error(path + ": expected node<TAB>score rows");
    scores.push_back(std::stod(line.substr(tab + 1)));
  }
  std::sort(scores.begin(), scores.end(), std::greater<>());
  return scores;
}

struct ExactArgs {
  GraphOpts graph;
  NodeId k = 10;
  double tol = 1e-12;
  int max_iters = 0;
  std::string out;
};

void run_exact(const ExactArgs& a) {
  Timer timer;
  Graph g = load_graph(a.graph);
  WalkConfig cfg = make_config(a.graph);
  PprVector v = solve_ppr(g, cfg, a.tol, a.max_iters);
  TopKReport report = top_k(v, a.k);

  write_text_file(a.out + ".ppr.tsv", to_tsv(v));
  write_json_output(a.out + ".topk.json", to_json(report));
  json params = graph_params(a.graph);
  params["k"] = a.k;
  params["tol"] = a.tol;
  params["max_iters"] = a.max_iters;
  write_manifest(a.out, "exact", params, timer);
}

struct McArgs {
  GraphOpts graph;
  std::string method = "end-point";
  std::uint64_t m = 1000;
  bool adaptive = false;
  NodeId k = 10;
  std::uint64_t gap_d = 2;
  std::uint64_t batch = 100;
  std::uint64_t m_cap = 1000000;
  std::uint64_t rng = 1;
  int threads = 0;
  std::string out;
};

void run_mc(const McArgs& a) {
  Timer timer;
  Graph g = load_graph(a.graph);
  WalkConfig cfg = make_config(a.graph);
  McMethod method = method_from_name(a.method);

  WalkOutcome outcome;
  json outcome_json;
  if (a.adaptive) {
    AdaptiveResult res = run_adaptive(g, cfg, a.k, a.gap_d, a.batch, a.m_cap,
                                      a.rng, method, a.threads);
    outcome = std::move(res.outcome);
    outcome_json = to_json(outcome);
    outcome_json["stopped_at_m"] = res.stopped_at_m;
    outcome_json["cap_reached"] = res.cap_reached;
  } else {
    outcome = method == McMethod::end_point
                  ? run_end_point(g, cfg, a.m, a.rng, a.threads)
                  : run_complete_path(g, cfg, a.m, a.rng, a.threads);
    outcome_json = to_json(outcome);
  }

  MCEstimate est = estimate(outcome, cfg);
  TopKReport report = top_k(est, a.k);

  write_json_output(a.out + ".outcome.json", outcome_json);
  write_json_output(a.out + ".estimate.json", to_json(est));
  write_json_output(a.out + ".topk.json", to_json(report));
  json params = graph_params(a.graph);
  params["method"] = a.method;
  params["adaptive"] = a.adaptive;
  params["m"] = a.m;
  params["k"] = a.k;
  params["gap_d"] = a.gap_d;
  params["batch"] = a.batch;
  params["m_cap"] = a.m_cap;
  params["rng"] = a.rng;
  params["threads"] = a.threads;
  if (a.adaptive) params["stopped_at_m"] = outcome.runs;
  write_manifest(a.out, "mc", params, timer);
}

void emit_bound(const std::string& out, const std::string& sub,
                const json& params, const json& report, const Timer& timer) {
  json wrapped = report;
  wrapped["subcommand"] = sub;
  std::cout << wrapped.dump(2) << "\n";
  if (!out.empty()) {
    write_json_output(out + ".bound.json", wrapped);
    write_manifest(out, "bounds " + sub, params, timer);
  }
}

struct ExperimentArgs {
  GraphOpts graph;
  NodeId k = 10;
  std::string m_grid = "100,1000,10000";
  std::uint32_t repeats = 20;
  std::string method = "end-point";
  std::uint64_t rng = 1;
  int threads = 0;
  std::string out;
};

void run_experiment(const ExperimentArgs& a) {
  Timer timer;
  Graph g = load_graph(a.graph);
  WalkConfig cfg = make_config(a.graph);
  std::vector<std::uint64_t> grid = parse_grid(a.m_grid);
  auto rows = convergence_curve(g, cfg, method_from_name(a.method), a.k, grid,
                                a.repeats, a.rng, a.threads);

  std::string csv = "m,mean_correct,std_correct\n";
  char line[96];
  for (const auto& r : rows) {
    std::snprintf(line, sizeof(line), "%llu,%.17g,%.17g\n",
                  static_cast<unsigned long long>(r.m), r.mean_correct,
                  r.std_correct);
    csv += line;
  }
  write_text_file(a.out + ".curve.csv", csv);

  json params = graph_params(a.graph);
  params["k"] = a.k;
  params["m_grid"] = a.m_grid;
  params["repeats"] = a.repeats;
  params["method"] = a.method;
  params["rng"] = a.rng;
  params["threads"] = a.threads;
  write_manifest(a.out, "experiment", params, timer);
}

struct DisambigArgs {
  std::string corpus;
  DisambigParams params;
  bool structure_only = false;
  std::string out;
};

void run_disambig_cmd(const DisambigArgs& a) {
  Timer timer;
  Corpus corpus = load_corpus_jsonl(a.corpus);
  DisambigParams p = a.params;
  p.content_stage = !a.structure_only;
  DisambigResult result = run_disambig(corpus, p);

  // Per-cluster top terms: summed member profiles, ten strongest terms.
  json cluster_terms = json::array();
  for (const auto& cluster : result.clustering.clusters) {
    std::map<std::string, double> agg;
    for (NodeId member : cluster) {
      auto it = result.profiles.find(member);
      if (it == result.profiles.end()) continue;
      for (const auto& [term, w] : it->second.terms) agg[term] += w;
    }
    std::vector<std::pair<std::string, double>> ranked(agg.begin(), agg.end());
    std::sort(ranked.begin(), ranked.end(), [](const auto& x, const auto& y) {
      if (x.second != y.second) return x.second > y.second;
      return x.first < y.first;
    });
    if (ranked.size() > 10) ranked.resize(10);
    json terms = json::array();
    for (const auto& [term, _] : ranked) terms.push_back(term);
    cluster_terms.push_back(terms);
  }

  json related = json::object();
  for (const auto& [person, ids] : result.related)
    related[std::to_string(person)] = ids;

  json out = to_json(result.clustering);
  out["cluster_terms"] = cluster_terms;
  out["related"] = related;
  write_json_output(a.out + ".clusters.json", out);

  json params{{"corpus", a.corpus},
              {"related_k", p.related_k},
              {"damping", p.damping},
              {"m", p.walks_m},
              {"threshold", p.hac_threshold},
              {"min_overlap", p.min_overlap},
              {"rng", p.rng_seed},
              {"structure_only", a.structure_only}};
  write_manifest(a.out, "disambig", params, timer);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"top-k personalized PageRank toolkit"};
  app.require_subcommand(1);

  ExactArgs exact_args;
  auto* exact_cmd = app.add_subcommand("exact", "solve the PPR vector exactly");
  add_graph_opts(exact_cmd, exact_args.graph);
  exact_cmd->add_option("--k", exact_args.k, "basket size")
      ->capture_default_str();
  exact_cmd->add_option("--tol", exact_args.tol, "convergence tolerance")
      ->capture_default_str();
  exact_cmd->add_option("--max-iters", exact_args.max_iters,
                        "iteration cap, 0 = automatic");
  exact_cmd->add_option("--out", exact_args.out, "output prefix")->required();
  exact_cmd->callback([&] { run_exact(exact_args); });

  McArgs mc_args;
  auto* mc_cmd = app.add_subcommand("mc", "Monte Carlo estimation");
  add_graph_opts(mc_cmd, mc_args.graph);
  mc_cmd->add_option("--method", mc_args.method, "end-point | complete-path")
      ->capture_default_str();
  mc_cmd->add_option("--m", mc_args.m, "number of runs")->capture_default_str();
  mc_cmd->add_flag("--adaptive", mc_args.adaptive,
                   "batch until the rank-k count gap reaches gap-d");
  mc_cmd->add_option("--k", mc_args.k, "basket size")->capture_default_str();
  mc_cmd->add_option("--gap-d", mc_args.gap_d, "adaptive count gap")
      ->capture_default_str();
  mc_cmd->add_option("--batch", mc_args.batch, "adaptive batch size")
      ->capture_default_str();
  mc_cmd->add_option("--m-cap", mc_args.m_cap, "adaptive run cap")
      ->capture_default_str();
  mc_cmd->add_option("--rng", mc_args.rng, "rng seed")->capture_default_str();
  mc_cmd->add_option("--threads", mc_args.threads,
                     "worker threads, 0 = PPRTOPK_THREADS or cores");
  mc_cmd->add_option("--out", mc_args.out, "output prefix")->required();
  mc_cmd->callback([&] { run_mc(mc_args); });

  auto* bounds_cmd = app.add_subcommand("bounds", "analytic error bounds");
  bounds_cmd->require_subcommand(1);

  struct {
    std::string method = "end-point";
    double pi_k = 0.0;
    double pi_k_of_k = 0.0;
    bool has_self = false;
    bool approximate = false;
    double damping = 0.85;
    std::uint64_t m = 1000;
    std::string out;
  } var_args;
  auto* var_cmd = bounds_cmd->add_subcommand("variance", "estimator sigma");
  var_cmd->add_option("--method", var_args.method, "end-point | complete-path")
      ->capture_default_str();
  var_cmd->add_option("--pi-k", var_args.pi_k, "score of the rank-k node")
      ->required();
  var_cmd->add_option("--pi-k-of-k", var_args.pi_k_of_k,
                      "rank-k node's score when it seeds itself")
      ->each([&](const std::string&) { var_args.has_self = true; });
  var_cmd->add_flag("--approximate", var_args.approximate,
                    "use the (1-c) self-visit approximation");
  var_cmd->add_option("--damping", var_args.damping, "continuation probability")
      ->capture_default_str();
  var_cmd->add_option("--m", var_args.m, "number of runs")
      ->capture_default_str();
  var_cmd->add_option("--out", var_args.out, "output prefix");
  var_cmd->callback([&] {
    Timer timer;
    double sigma = 0.0;
    if (method_from_name(var_args.method) == McMethod::end_point) {
      sigma = sigma_end_point(var_args.pi_k, var_args.m);
    } else {
      if (!var_args.has_self && !var_args.approximate)
        throw std::invalid_argument(
            "complete-path sigma needs --pi-k-of-k or --approximate");
      sigma = sigma_complete_path(var_args.pi_k, var_args.pi_k_of_k,
                                  var_args.damping, var_args.m,
                                  var_args.approximate);
    }
    json params{{"method", var_args.method},
                {"pi_k", var_args.pi_k},
                {"pi_k_of_k", var_args.pi_k_of_k},
                {"approximate", var_args.approximate},
                {"damping", var_args.damping},
                {"m", var_args.m}};
    emit_bound(var_args.out, "variance", params, json{{"sigma", sigma}}, timer);
  });

  struct {
    GraphOpts graph;
    NodeId i = 0;
    NodeId j = 0;
    double tol = 1e-12;
    std::string out;
  } cov_args;
  auto* cov_cmd =
      bounds_cmd->add_subcommand("covariance", "visit-count covariance entry");
  add_graph_opts(cov_cmd, cov_args.graph);
  cov_cmd->add_option("--i", cov_args.i, "first node")->required();
  cov_cmd->add_option("--j", cov_args.j, "second node")->required();
  cov_cmd->add_option("--tol", cov_args.tol, "solver tolerance")
      ->capture_default_str();
  cov_cmd->add_option("--out", cov_args.out, "output prefix");
  cov_cmd->callback([&] {
    Timer timer;
    Graph g = load_graph(cov_args.graph);
    WalkConfig cfg = make_config(cov_args.graph);
    CovEntry e = covariance_entry(g, cfg, cov_args.i, cov_args.j, cov_args.tol);
    json params = graph_params(cov_args.graph);
    params["i"] = cov_args.i;
    params["j"] = cov_args.j;
    params["tol"] = cov_args.tol;
    emit_bound(cov_args.out, "covariance", params,
               json{{"s", e.s}, {"i", e.i}, {"j", e.j}, {"value", e.value}},
               timer);
  });

  struct {
    double pi_i = 0.0;
    double pi_j = 0.0;
    std::uint64_t m = 100;
    std::string mode = "clt";
    std::string out;
  } pair_args;
  auto* pair_cmd = bounds_cmd->add_subcommand(
      "pairwise", "P{estimate of i <= estimate of j}");
  pair_cmd->add_option("--pi-i", pair_args.pi_i)->required();
  pair_cmd->add_option("--pi-j", pair_args.pi_j)->required();
  pair_cmd->add_option("--m", pair_args.m, "number of runs")
      ->capture_default_str();
  pair_cmd->add_option("--mode", pair_args.mode, "exact | clt")
      ->check(CLI::IsMember({"exact", "clt"}))
      ->capture_default_str();
  pair_cmd->add_option("--out", pair_args.out, "output prefix");
  pair_cmd->callback([&] {
    Timer timer;
    double value =
        pair_args.mode == "exact"
            ? pairwise_misrank_exact(pair_args.pi_i, pair_args.pi_j,
                                     pair_args.m)
            : pairwise_misrank_clt_multinomial(pair_args.pi_i, pair_args.pi_j,
                                               pair_args.m);
    json params{{"pi_i", pair_args.pi_i},
                {"pi_j", pair_args.pi_j},
                {"m", pair_args.m},
                {"mode", pair_args.mode}};
    emit_bound(pair_args.out, "pairwise", params, json{{"value", value}},
               timer);
  });

  struct BasketArgs {
    std::string pi_csv;
    std::string ppr_tsv;
    NodeId k = 10;
    std::uint64_t m = 1000;
    std::int64_t j_star = -1;
    std::string out;
  };
  auto add_basket_opts = [](CLI::App* cmd, BasketArgs& a) {
    cmd->add_option("--pi", a.pi_csv, "comma-separated scores");
    cmd->add_option("--ppr", a.ppr_tsv, "scores from an exact-solve TSV");
    cmd->add_option("--k", a.k, "basket size")->capture_default_str();
    cmd->add_option("--m", a.m, "number of runs")->capture_default_str();
    cmd->add_option("--j-star", a.j_star, "split rank, -1 = automatic scan");
    cmd->add_option("--out", a.out, "output prefix");
  };
  auto basket_scores = [](const BasketArgs& a) {
    if (a.pi_csv.empty() == a.ppr_tsv.empty())
      throw std::invalid_argument("give exactly one of --pi and --ppr");
    std::vector<double> pi = a.pi_csv.empty() ? scores_from_tsv(a.ppr_tsv)
                                              : parse_prob_list(a.pi_csv);
    std::sort(pi.begin(), pi.end(), std::greater<>());
    return pi;
  };
  auto basket_params = [](const BasketArgs& a) {
    return json{{"pi", a.pi_csv}, {"ppr", a.ppr_tsv}, {"k", a.k},
                {"m", a.m},       {"j_star", a.j_star}};
  };
  auto split_opt = [](const BasketArgs& a) {
    if (a.j_star < 0) return std::optional<NodeId>{};
    return std::optional<NodeId>{static_cast<NodeId>(a.j_star)};
  };

  BasketArgs basket_args;
  auto* basket_cmd =
      bounds_cmd->add_subcommand("basket", "top-k basket misranking bound");
  add_basket_opts(basket_cmd, basket_args);
  basket_cmd->callback([&] {
    Timer timer;
    auto pi = basket_scores(basket_args);
    MisrankBound b = basket_misrank_bound(pi, basket_args.k, basket_args.m,
                                          split_opt(basket_args));
    emit_bound(basket_args.out, "basket", basket_params(basket_args),
               to_json(b), timer);
  });

  BasketArgs list_args;
  auto* list_cmd =
      bounds_cmd->add_subcommand("list", "ordered top-k list misranking bound");
  add_basket_opts(list_cmd, list_args);
  list_cmd->callback([&] {
    Timer timer;
    auto pi = basket_scores(list_args);
    MisrankBound b =
        list_misrank_bound(pi, list_args.k, list_args.m, split_opt(list_args));
    emit_bound(list_args.out, "list", basket_params(list_args), to_json(b),
               timer);
  });

  struct {
    double p_head = 0.0;
    std::uint64_t s = 1;
    std::uint64_t m = 1000;
    std::string mode = "both";
    std::string out;
  } order_args;
  auto* order_cmd = bounds_cmd->add_subcommand(
      "order-stats", "order-statistic detection probability");
  order_cmd->add_option("--p-head", order_args.p_head, "head mass")->required();
  order_cmd->add_option("--s", order_args.s, "order statistic index")
      ->capture_default_str();
  order_cmd->add_option("--m", order_args.m, "number of runs")
      ->capture_default_str();
  order_cmd->add_option("--mode", order_args.mode, "sum | beta | both")
      ->check(CLI::IsMember({"sum", "beta", "both"}))
      ->capture_default_str();
  order_cmd->add_option("--out", order_args.out, "output prefix");
  order_cmd->callback([&] {
    Timer timer;
    json report;
    if (order_args.mode != "beta")
      report["sum"] = order_statistic_cdf(order_args.p_head, order_args.s,
                                          order_args.m, OrderStatMode::sum);
    if (order_args.mode != "sum")
      report["beta"] = order_statistic_cdf(order_args.p_head, order_args.s,
                                           order_args.m, OrderStatMode::beta);
    if (order_args.mode == "both")
      report["agree"] = std::abs(report["sum"].get<double>() -
                                 report["beta"].get<double>()) <= 1e-12;
    json params{{"p_head", order_args.p_head},
                {"s", order_args.s},
                {"m", order_args.m},
                {"mode", order_args.mode}};
    emit_bound(order_args.out, "order-stats", params, report, timer);
  });

  struct {
    double pi = 0.0;
    std::uint64_t r = 1;
    std::uint64_t m = 1000;
    std::string out;
  } hit_args;
  auto* hit_cmd =
      bounds_cmd->add_subcommand("hit", "P{node hit at least r times}");
  hit_cmd->add_option("--pi", hit_args.pi, "node score")->required();
  hit_cmd->add_option("--r", hit_args.r, "hit threshold")->capture_default_str();
  hit_cmd->add_option("--m", hit_args.m, "number of runs")
      ->capture_default_str();
  hit_cmd->add_option("--out", hit_args.out, "output prefix");
  hit_cmd->callback([&] {
    Timer timer;
    double value = hit_probability(hit_args.pi, hit_args.r, hit_args.m);
    json params{{"pi", hit_args.pi}, {"r", hit_args.r}, {"m", hit_args.m}};
    emit_bound(hit_args.out, "hit", params, json{{"value", value}}, timer);
  });

  struct {
    std::string pi_csv;
    double m = 1000.0;
    std::uint64_t y = 1;
    std::string out;
  } mu_args;
  auto* mu_cmd = bounds_cmd->add_subcommand(
      "mu", "expected tail nodes with y or more Poissonized hits");
  mu_cmd->add_option("--pi", mu_args.pi_csv, "comma-separated tail scores")
      ->required();
  mu_cmd->add_option("--m", mu_args.m, "Poisson mean scale")
      ->capture_default_str();
  mu_cmd->add_option("--y", mu_args.y, "hit threshold")->capture_default_str();
  mu_cmd->add_option("--out", mu_args.out, "output prefix");
  mu_cmd->callback([&] {
    Timer timer;
    auto pi = parse_prob_list(mu_args.pi_csv);
    double value = poisson_mu(pi, mu_args.m, mu_args.y);
    json params{{"pi", mu_args.pi_csv}, {"m", mu_args.m}, {"y", mu_args.y}};
    emit_bound(mu_args.out, "mu", params, json{{"value", value}}, timer);
  });

  struct {
    std::string pi_csv;
    NodeId k = 1;
    double m = 1000.0;
    std::string out;
  } em1_args;
  auto* em1_cmd = bounds_cmd->add_subcommand(
      "em1", "Poissonized expected correct basket members");
  em1_cmd->add_option("--pi", em1_args.pi_csv, "comma-separated sorted scores")
      ->required();
  em1_cmd->add_option("--k", em1_args.k, "basket size")->capture_default_str();
  em1_cmd->add_option("--m", em1_args.m, "Poisson mean scale")
      ->capture_default_str();
  em1_cmd->add_option("--out", em1_args.out, "output prefix");
  em1_cmd->callback([&] {
    Timer timer;
    auto pi = parse_prob_list(em1_args.pi_csv);
    std::sort(pi.begin(), pi.end(), std::greater<>());
    double value = expected_m1(pi, em1_args.k, em1_args.m);
    json params{{"pi", em1_args.pi_csv}, {"k", em1_args.k}, {"m", em1_args.m}};
    emit_bound(em1_args.out, "em1", params, json{{"value", value}}, timer);
  });

  struct {
    double a = 0.0;
    double epsilon = 0.0;
    double alpha = 0.0;
    std::uint64_t k = 1;
    double pi_k1 = 0.0;
    std::string out;
  } rec_args;
  auto* rec_cmd = bounds_cmd->add_subcommand(
      "recommend-m", "sufficient run count for basket detection");
  rec_cmd->add_option("--a", rec_args.a, "detection level")->required();
  rec_cmd->add_option("--epsilon", rec_args.epsilon, "relative gap")
      ->required();
  rec_cmd->add_option("--alpha", rec_args.alpha, "error budget")->required();
  rec_cmd->add_option("--k", rec_args.k, "basket size")->required();
  rec_cmd->add_option("--pi-k1", rec_args.pi_k1, "score at rank k+1")
      ->required();
  rec_cmd->add_option("--out", rec_args.out, "output prefix");
  rec_cmd->callback([&] {
    Timer timer;
    RecommendedM rec = recommended_m(rec_args.a, rec_args.epsilon,
                                     rec_args.alpha, rec_args.k,
                                     rec_args.pi_k1);
    json params{{"a", rec_args.a},
                {"epsilon", rec_args.epsilon},
                {"alpha", rec_args.alpha},
                {"k", rec_args.k},
                {"pi_k1", rec_args.pi_k1}};
    emit_bound(rec_args.out, "recommend-m", params,
               json{{"m", rec.m},
                    {"y", rec.y},
                    {"mu_y", rec.mu_y},
                    {"condition_i_holds", rec.condition_i_holds},
                    {"epsilon_exceeds_1_over_y", rec.epsilon_exceeds_1_over_y}},
               timer);
  });

  ExperimentArgs exp_args;
  auto* exp_cmd =
      app.add_subcommand("experiment", "basket convergence curve vs m");
  add_graph_opts(exp_cmd, exp_args.graph);
  exp_cmd->add_option("--k", exp_args.k, "basket size")->capture_default_str();
  exp_cmd->add_option("--m-grid", exp_args.m_grid, "comma-separated run counts")
      ->capture_default_str();
  exp_cmd->add_option("--repeats", exp_args.repeats, "repeats per grid point")
      ->capture_default_str();
  exp_cmd->add_option("--method", exp_args.method, "end-point | complete-path")
      ->capture_default_str();
  exp_cmd->add_option("--rng", exp_args.rng, "rng seed")->capture_default_str();
  exp_cmd->add_option("--threads", exp_args.threads,
                      "worker threads, 0 = PPRTOPK_THREADS or cores");
  exp_cmd->add_option("--out", exp_args.out, "output prefix")->required();
  exp_cmd->callback([&] { run_experiment(exp_args); });

  DisambigArgs dis_args;
  auto* dis_cmd =
      app.add_subcommand("disambig", "graph plus content name disambiguation");
  dis_cmd->add_option("--corpus", dis_args.corpus, "JSON-lines corpus")
      ->required();
  dis_cmd->add_option("--related-k", dis_args.params.related_k,
                      "related pages per person")
      ->capture_default_str();
  dis_cmd->add_option("--damping", dis_args.params.damping,
                      "continuation probability for related-page walks")
      ->capture_default_str();
  dis_cmd->add_option("--m", dis_args.params.walks_m, "walks per person")
      ->capture_default_str();
  dis_cmd->add_option("--threshold", dis_args.params.hac_threshold,
                      "content merge threshold")
      ->capture_default_str();
  dis_cmd->add_option("--min-overlap", dis_args.params.min_overlap,
                      "shared related pages required for a structure merge")
      ->capture_default_str();
  dis_cmd->add_option("--rng", dis_args.params.rng_seed, "rng seed")
      ->capture_default_str();
  dis_cmd->add_flag("--structure-only", dis_args.structure_only,
                    "skip the content stage");
  dis_cmd->add_option("--out", dis_args.out, "output prefix")->required();
  dis_cmd->callback([&] { run_disambig_cmd(dis_args); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
