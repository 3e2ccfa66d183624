// Acceptance gate: one line per criterion, nonzero exit when any fails.
//
// Every stochastic criterion runs under a fixed seed so the binary is
// deterministic; tolerances are stated next to each check.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "pprtopk/bounds.hpp"
#include "pprtopk/disambig.hpp"
#include "pprtopk/exact.hpp"
#include "pprtopk/graph.hpp"
#include "pprtopk/mc.hpp"
#include "pprtopk/rng.hpp"
#include "pprtopk/topk.hpp"
#include "support/dense_oracle.hpp"
#include "support/fixtures.hpp"
#include "support/tmpdir.hpp"

using namespace pprtopk;

namespace {

constexpr std::uint64_t kStream2 = 0x9e3779b97f4a7c15ULL;

int g_failures = 0;

void report(int idx, bool ok, const std::string& label,
            const std::string& detail) {
  std::printf("criterion %d: %s  %s  (%s)\n", idx, ok ? "PASS" : "FAIL",
              label.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

struct Fixture {
  Graph g;
  WalkConfig cfg;
  std::vector<double> pi;    // seed 0 scores
  std::vector<double> self;  // pi_v(v) for every v
};

Fixture make_fixture() {
  Fixture f;
  f.g = testsupport::fixture10();
  f.cfg.damping = 0.85;
  f.cfg.seed_node = 0;
  f.pi = solve_ppr(f.g, f.cfg).scores;
  f.self.resize(f.pi.size());
  for (NodeId v = 0; v < f.pi.size(); ++v) {
    WalkConfig c = f.cfg;
    c.seed_node = v;
    f.self[v] = solve_ppr(f.g, c).scores[v];
  }
  return f;
}

// 1. Power-iteration solver against an independent dense LU solve.
void criterion_oracle_equivalence() {
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(20260821);
  double worst = 0.0;
  for (int gi = 0; gi < 50; ++gi) {
    NodeId n = 20 + NodeId(rng() % 181);
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (NodeId u = 0; u < n; ++u) {
      std::uint64_t deg = rng() % 5;  // degree 0 leaves u dangling
      for (std::uint64_t e = 0; e < deg; ++e)
        edges.emplace_back(u, NodeId(rng() % n));
    }
    Graph g = Graph::from_edges(n, edges);
    WalkConfig cfg;
    cfg.seed_node = NodeId(rng() % n);
    cfg.dangling_policy = (gi % 2 == 0) ? DanglingPolicy::self_loop
                                 : DanglingPolicy::jump_to_seed;
    for (double c : {0.2, 0.5, 0.85}) {
      cfg.damping = c;
      std::vector<double> fast = solve_ppr(g, cfg).scores;
      std::vector<double> dense = testsupport::dense_ppr(g, cfg);
      for (NodeId v = 0; v < n; ++v)
        worst = std::max(worst, std::fabs(fast[v] - dense[v]));
    }
  }
  double dt = seconds_since(t0);
  report(1, worst <= 1e-10 && dt < 10.0, "oracle equivalence",
         fmt("50 graphs x 3 damping values, max abs err %.2e <= 1e-10, "
             "%.1f s < 10 s",
             worst, dt));
}

// 2. Both estimators at m = 1e6: every node within 4 analytic sigma on
// every repetition, and at least 95% of (node, repetition) pairs within
// 2 sigma per method over 100 repetitions.
void criterion_estimator_consistency(const Fixture& f) {
  auto t0 = std::chrono::steady_clock::now();
  const std::uint64_t m = 1000000;
  const int reps = 100;
  const NodeId n = NodeId(f.pi.size());
  std::vector<double> sig_ep(n), sig_cp(n);
  for (NodeId v = 0; v < n; ++v) {
    sig_ep[v] = sigma_end_point(f.pi[v], m);
    sig_cp[v] = sigma_complete_path(f.pi[v], f.self[v], f.cfg.damping, m);
  }
  int ok_ep = 0, ok_cp = 0;
  bool four_sigma = true;
  for (int rep = 0; rep < reps; ++rep) {
    std::uint64_t seed = mix64(0x5151ULL ^ (std::uint64_t(rep) + 1));
    MCEstimate ep = estimate(run_end_point(f.g, f.cfg, m, seed, 1), f.cfg);
    MCEstimate cp =
        estimate(run_complete_path(f.g, f.cfg, m, seed ^ kStream2, 1), f.cfg);
    for (NodeId v = 0; v < n; ++v) {
      double de = std::fabs(ep.at(v) - f.pi[v]);
      double dc = std::fabs(cp.at(v) - f.pi[v]);
      if (de <= 2 * sig_ep[v]) ++ok_ep;
      if (dc <= 2 * sig_cp[v]) ++ok_cp;
      if (de > 4 * sig_ep[v] || dc > 4 * sig_cp[v]) four_sigma = false;
    }
  }
  double dt = seconds_since(t0);
  int pairs = reps * int(n);
  bool ok = four_sigma && ok_ep * 100 >= 95 * pairs &&
            ok_cp * 100 >= 95 * pairs && dt < 60.0;
  report(2, ok, "estimator consistency",
         fmt("all reps within 4 sigma: %s; 2-sigma coverage EP %d/%d, "
             "CP %d/%d >= 950; %.1f s < 60 s",
             four_sigma ? "yes" : "NO", ok_ep, pairs, ok_cp, pairs, dt));
}

// 3. Analytic standard deviations against 500-repetition empirical ones
// at m = 1e4, plus the variance advantage of Complete Path.
void criterion_variance_formulas(const Fixture& f) {
  auto t0 = std::chrono::steady_clock::now();
  const std::uint64_t m = 10000;
  const int reps = 500;
  const NodeId n = NodeId(f.pi.size());
  std::vector<double> se(n, 0), se2(n, 0), sc(n, 0), sc2(n, 0);
  for (int rep = 0; rep < reps; ++rep) {
    std::uint64_t seed = mix64(0xC3ULL ^ (std::uint64_t(rep) + 1));
    MCEstimate ep = estimate(run_end_point(f.g, f.cfg, m, seed, 1), f.cfg);
    MCEstimate cp =
        estimate(run_complete_path(f.g, f.cfg, m, seed ^ kStream2, 1), f.cfg);
    for (NodeId v = 0; v < n; ++v) {
      double a = ep.at(v), b = cp.at(v);
      se[v] += a;
      se2[v] += a * a;
      sc[v] += b;
      sc2[v] += b * b;
    }
  }
  double worst_rel = 0.0, agg_ep = 0.0, agg_cp = 0.0;
  bool cp_not_worse = true;
  int checked = 0;
  for (NodeId v = 0; v < n; ++v) {
    if (f.pi[v] < 0.01) continue;
    ++checked;
    double me = se[v] / reps, var_ep = se2[v] / reps - me * me;
    double mc = sc[v] / reps, var_cp = sc2[v] / reps - mc * mc;
    double rel_ep =
        std::fabs(std::sqrt(var_ep) / sigma_end_point(f.pi[v], m) - 1.0);
    double rel_cp = std::fabs(
        std::sqrt(var_cp) /
            sigma_complete_path(f.pi[v], f.self[v], f.cfg.damping, m) -
        1.0);
    worst_rel = std::max({worst_rel, rel_ep, rel_cp});
    if (var_cp > var_ep) cp_not_worse = false;
    agg_ep += var_ep;
    agg_cp += var_cp;
  }
  double ratio = agg_ep / agg_cp;
  double dt = seconds_since(t0);
  bool ok = worst_rel <= 0.15 && cp_not_worse && ratio >= 3.0 &&
            ratio <= 10.0 && dt < 300.0;
  report(3, ok, "variance formulas",
         fmt("%d nodes with pi >= 0.01, worst sigma rel err %.3f <= 0.15, "
             "CP var <= EP var: %s, aggregate ratio %.2f in [3, 10], "
             "%.1f s < 300 s",
             checked, worst_rel, cp_not_worse ? "yes" : "NO", ratio, dt));
}

// 4. (1-c)^2 Sigma_kk(s) equals the Complete Path variance at m = 1 for
// every node of the fixture.
void criterion_covariance_identity(const Fixture& f) {
  const double c = f.cfg.damping;
  double worst = 0.0;
  for (NodeId k = 0; k < f.pi.size(); ++k) {
    double lhs =
        (1 - c) * (1 - c) * covariance_entry(f.g, f.cfg, k, k).value;
    double sig = sigma_complete_path(f.pi[k], f.self[k], c, 1);
    worst = std::max(worst, std::fabs(lhs - sig * sig));
  }
  report(4, worst <= 1e-10, "covariance identity",
         fmt("max abs gap %.2e <= 1e-10 across all 10 diagonal entries",
             worst));
}

// 5. Order-statistic detection probability: the two closed forms agree,
// and both match a large simulated multinomial draw.
void criterion_order_statistics() {
  double worst_gap = 0.0;
  for (double p : {0.02, 0.1, 0.25, 0.5, 0.75, 0.9, 0.98})
    for (std::uint64_t m : {5ULL, 50ULL, 500ULL})
      for (std::uint64_t s : {std::uint64_t(1), m / 2 + 1, m}) {
        double a = order_statistic_cdf(p, s, m, OrderStatMode::sum);
        double b = order_statistic_cdf(p, s, m, OrderStatMode::beta);
        worst_gap = std::max(worst_gap, std::fabs(a - b));
      }

  struct Triple {
    std::uint64_t m;
    double p;
    std::uint64_t s;
  };
  const Triple triples[] = {
      {10, 0.3, 2}, {60, 0.6, 40}, {5, 0.1, 1}, {500, 0.5, 250},
      {500, 0.85, 450}};
  std::mt19937_64 rng(mix64(0xC5ULL));
  const int draws = 1000000;
  double worst_z = 0.0;
  for (const Triple& t : triples) {
    double exact = order_statistic_cdf(t.p, t.s, t.m, OrderStatMode::sum);
    std::binomial_distribution<long> head(long(t.m), t.p);
    long hit = 0;
    for (int i = 0; i < draws; ++i)
      if (std::uint64_t(head(rng)) >= t.s) ++hit;
    double sim = double(hit) / draws;
    double se = std::sqrt(exact * (1 - exact) / draws);
    worst_z = std::max(worst_z, std::fabs(sim - exact) / se);
  }
  bool ok = worst_gap <= 1e-12 && worst_z <= 3.0;
  report(5, ok, "order-statistic dual form",
         fmt("sum vs beta max gap %.2e <= 1e-12 over 63-point grid; "
             "5 simulated triples, 1e6 draws each, worst |z| %.2f <= 3",
             worst_gap, worst_z));
}

// 6. The basket bound dominates the empirical misranking frequency and
// its tail decays geometrically in m.
void criterion_bound_validity(const Fixture& f) {
  std::vector<double> ps = testsupport::fixture10_pi_sorted();
  std::vector<NodeId> truth = {0, 2, 6};  // top-3 by score, id-sorted
  bool dominated = true;
  std::string per_m;
  for (std::uint64_t m : {50ULL, 200ULL, 1000ULL}) {
    MisrankBound b = basket_misrank_bound(ps, 3, m);
    const int trials = 10000;
    int bad = 0;
    for (int t = 0; t < trials; ++t) {
      std::uint64_t seed = mix64(0xC6ULL ^ (std::uint64_t(t) + 1)) ^ mix64(m);
      TopKReport rep =
          top_k(estimate(run_end_point(f.g, f.cfg, m, seed, 1), f.cfg), 3);
      std::vector<NodeId> est;
      for (const TopKEntry& e : rep.entries) est.push_back(e.id);
      std::sort(est.begin(), est.end());
      if (est != truth) ++bad;
    }
    double freq = double(bad) / trials;
    if (b.value < freq) dominated = false;
    per_m += fmt("m=%llu %.3f>=%.3f ", (unsigned long long)m, b.value, freq);
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int np = 0;
  for (std::uint64_t m = 400; m <= 2000; m += 400) {
    double lr = std::log(basket_misrank_bound(ps, 3, m).raw);
    sx += double(m);
    sy += lr;
    sxx += double(m) * double(m);
    sxy += double(m) * lr;
    ++np;
  }
  double slope = (np * sxy - sx * sy) / (np * sxx - sx * sx);
  bool ok = dominated && slope < 0.0;
  report(6, ok, "bound validity",
         fmt("bound >= empirical frequency at %s; log-bound slope %.2e < 0",
             per_m.c_str(), slope));
}

// 7. Poissonized E(M1) against a direct simulation, plus the recommended
// run count rechecked through the mu(y) side condition.
void criterion_poissonization() {
  std::vector<double> ps = testsupport::fixture10_pi_sorted();
  double worst_rel = 0.0;
  for (std::uint64_t m : {100ULL, 1000ULL, 10000ULL}) {
    double formula = expected_m1(ps, 3, double(m));
    std::mt19937_64 rng(mix64(0xC7ULL) ^ m);
    const int trials = 100000;
    double acc = 0.0;
    for (int t = 0; t < trials; ++t) {
      double y[10];
      for (int i = 0; i < 10; ++i) {
        std::poisson_distribution<long> d(double(m) * ps[i]);
        y[i] = double(d(rng));
      }
      double over = 0.0;
      for (int i = 0; i < 3; ++i)
        for (int j = 3; j < 10; ++j)
          if (y[j] >= y[i]) over += 1.0;
      acc += 3.0 - over / 3.0;
    }
    double sim = acc / trials;
    worst_rel = std::max(worst_rel,
                         std::fabs(sim - formula) / std::fabs(formula));
  }

  struct Params {
    double a, eps, alpha;
    std::uint64_t k;
    double pk1;
  };
  const Params sets[] = {{0.01, 0.5, 0.1, 10, 0.005},
                         {0.02, 0.3, 0.05, 5, 0.014},
                         {0.005, 0.6, 0.2, 20, 0.002}};
  bool recheck_ok = true;
  for (const Params& p : sets) {
    RecommendedM rec = recommended_m(p.a, p.eps, p.alpha, p.k, p.pk1);
    std::vector<double> tail(std::size_t(1.0 / p.pk1), p.pk1);
    double mu = poisson_mu(tail, double(rec.m), rec.y);
    bool consistent = std::fabs(mu - rec.mu_y) <=
                      1e-12 * std::max(1.0, std::fabs(rec.mu_y));
    if (!rec.condition_i_holds || mu >= p.alpha * double(p.k) || !consistent)
      recheck_ok = false;
  }
  bool ok = worst_rel <= 0.02 && recheck_ok;
  report(7, ok, "Poissonized relaxation",
         fmt("expected M1 vs 1e5-trial simulation, worst rel err %.4f <= "
             "0.02; recommended m recheck mu(y) < alpha k on 3 parameter "
             "sets: %s",
             worst_rel, recheck_ok ? "yes" : "NO"));
}

// 8. Exact pairwise misranking against exhaustive trinomial enumeration.
void criterion_exact_pairwise() {
  const double fact[6] = {1, 1, 2, 6, 24, 120};
  const std::pair<double, double> pairs[] = {
      {0.3, 0.2}, {0.45, 0.35}, {0.1, 0.05}, {0.05, 0.9}};
  double worst = 0.0;
  for (std::uint64_t m = 1; m <= 5; ++m)
    for (auto [pi, pj] : pairs) {
      double rest = 1.0 - pi - pj;
      double brute = 0.0;
      for (std::uint64_t a = 0; a <= m; ++a)
        for (std::uint64_t b = 0; a + b <= m; ++b) {
          if (a > b) continue;
          std::uint64_t r = m - a - b;
          double coef = fact[m] / (fact[a] * fact[b] * fact[r]);
          brute += coef * std::pow(pi, double(a)) * std::pow(pj, double(b)) *
                   std::pow(rest, double(r));
        }
      worst =
          std::max(worst, std::fabs(brute - pairwise_misrank_exact(pi, pj, m)));
    }
  report(8, worst <= 1e-14, "exact pairwise misranking",
         fmt("m = 1..5, 4 probability pairs, max abs gap %.2e <= 1e-14",
             worst));
}

// 9. Early stopping on a star graph: correct basket almost always, with
// a median stop far below the 1e6-run budget criterion 2 uses (10% of
// that budget, so 1e5 runs).
void criterion_adaptive_stopping() {
  Graph s = testsupport::star10();
  WalkConfig cfg;
  cfg.damping = 0.85;
  cfg.seed_node = 0;
  const std::uint64_t budget = 100000;  // 10% of the criterion-2 run count
  int correct = 0;
  std::vector<std::uint64_t> stopped;
  for (int t = 0; t < 200; ++t) {
    std::uint64_t seed = mix64(0xC9ULL ^ (std::uint64_t(t) + 1));
    AdaptiveResult ar = run_adaptive(s, cfg, 1, 2, 10, budget, seed,
                                     McMethod::end_point, 1);
    TopKReport rep = top_k(estimate(ar.outcome, cfg), 1);
    if (rep.entries[0].id == 0) ++correct;
    stopped.push_back(ar.stopped_at_m);
  }
  std::sort(stopped.begin(), stopped.end());
  std::uint64_t median = stopped[99];
  bool ok = correct >= 190 && median <= budget;
  report(9, ok, "adaptive stopping",
         fmt("correct basket %d/200 >= 190; median stopped_at_m %llu <= "
             "%llu run budget",
             correct, (unsigned long long)median, (unsigned long long)budget));
}

// 10. Two-person synthetic corpus: structure-only clustering is exact
// and deterministic, and the profile reweighting matches hand values.
void criterion_disambiguation() {
  testsupport::ScopedTempDir tmp;
  auto path = tmp.write("corpus.jsonl", testsupport::barbell_corpus_jsonl());
  Corpus corpus = load_corpus_jsonl(path.string());
  DisambigParams params;
  params.rng_seed = 7;
  params.content_stage = false;
  DisambigResult a = run_disambig(corpus, params);
  DisambigResult b = run_disambig(corpus, params);
  std::vector<std::vector<NodeId>> want = {{0, 1}, {2, 3}};
  bool clusters_ok = a.clustering.clusters == want &&
                     b.clustering.clusters == a.clustering.clusters;

  CorpusPage person;
  person.id = 0;
  person.tokens = {"alice", "smith", "climbs"};
  CorpusPage rel;
  rel.id = 4;
  rel.tokens = {"alice", "climbs", "mountains", "often"};
  PageProfile prof = reweight_profile(person, {&rel});
  const double inv_norm = 1.0 / std::sqrt(66.0);
  bool profile_ok =
      prof.terms.size() == 3 && prof.terms[0].first == "alice" &&
      prof.terms[1].first == "climbs" && prof.terms[2].first == "smith" &&
      std::fabs(prof.terms[0].second - 5 * inv_norm) <= 1e-12 &&
      std::fabs(prof.terms[1].second - 5 * inv_norm) <= 1e-12 &&
      std::fabs(prof.terms[2].second - 4 * inv_norm) <= 1e-12;

  report(10, clusters_ok && profile_ok, "disambiguation pipeline",
         fmt("structure-only clusters {{0,1},{2,3}} and repeat-run "
             "determinism: %s; reweighted profile matches hand values to "
             "1e-12: %s",
             clusters_ok ? "yes" : "NO", profile_ok ? "yes" : "NO"));
}

}  // namespace

int main() {
  Fixture f = make_fixture();
  criterion_oracle_equivalence();
  criterion_estimator_consistency(f);
  criterion_variance_formulas(f);
  criterion_covariance_identity(f);
  criterion_order_statistics();
  criterion_bound_validity(f);
  criterion_poissonization();
  criterion_exact_pairwise();
  criterion_adaptive_stopping();
  criterion_disambiguation();
  if (g_failures == 0)
    std::printf("acceptance: all 10 criteria passed\n");
  else
    std::printf("acceptance: %d criteria FAILED\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
