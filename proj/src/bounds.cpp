#include "pprtopk/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "pprtopk/exact.hpp"
#include "pprtopk/mc.hpp"
#include "pprtopk/numerics.hpp"
#include "pprtopk/rng.hpp"
#include "pprtopk/topk.hpp"

namespace pprtopk {

namespace {

constexpr double kInvSqrt2Pi = 0.3989422804014326779;

void check_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
}

void check_sorted_desc(std::span<const double> pi) {
  for (double p : pi) check_probability(p, "pi");
  for (std::size_t i = 1; i < pi.size(); ++i)
    if (pi[i] > pi[i - 1] + 1e-12)
      throw std::invalid_argument("pi must be sorted in descending order");
}

// l * log(p) with the 0 * log 0 = 0 convention; -inf marks an
// impossible count.
double count_log_prob(std::uint64_t l, double p) {
  if (l == 0) return 0.0;
  if (p <= 0.0) return -std::numeric_limits<double>::infinity();
  return static_cast<double>(l) * std::log(p);
}

}  // namespace

double sigma_end_point(double pi_k, std::uint64_t m) {
  check_probability(pi_k, "pi_k");
  if (m < 1) throw std::invalid_argument("m must be at least 1");
  return std::sqrt(pi_k * (1.0 - pi_k) / static_cast<double>(m));
}

double sigma_complete_path(double pi_k_of_s, double pi_k_of_k, double c,
                           std::uint64_t m, bool approximate) {
  check_probability(pi_k_of_s, "pi_k_of_s");
  check_probability(pi_k_of_k, "pi_k_of_k");
  if (!(c > 0.0 && c < 1.0))
    throw std::invalid_argument("damping must lie in (0, 1)");
  if (m < 1) throw std::invalid_argument("m must be at least 1");
  double twice_self = approximate ? 2.0 * (1.0 - c) : 2.0 * pi_k_of_k;
  double radicand = pi_k_of_s * (twice_self - (1.0 - c) - pi_k_of_s);
  if (radicand < -1e-12)
    throw std::invalid_argument("negative variance: inconsistent inputs");
  return std::sqrt(std::max(0.0, radicand) / static_cast<double>(m));
}

CovEntry covariance_entry(const Graph& g, const WalkConfig& cfg, NodeId i,
                          NodeId j, double tol) {
  if (i >= g.node_count() || j >= g.node_count())
    throw std::invalid_argument("covariance nodes out of range");
  TransitionView view(g, cfg);
  const double scale = 1.0 / (1.0 - cfg.damping);
  const NodeId s = cfg.seed_node;

  PprVector from_s = solve_ppr(view, s, cfg.damping, tol);
  PprVector from_i = i == s ? from_s : solve_ppr(view, i, cfg.damping, tol);
  PprVector from_j =
      j == s ? from_s : (j == i ? from_i : solve_ppr(view, j, cfg.damping, tol));

  double z_si = from_s.scores[i] * scale;
  double z_sj = from_s.scores[j] * scale;
  double z_ij = from_i.scores[j] * scale;
  double z_ji = from_j.scores[i] * scale;

  CovEntry entry;
  entry.s = s;
  entry.i = i;
  entry.j = j;
  entry.value = z_si * z_ij + z_ji * z_sj - (i == j ? z_si : 0.0) - z_si * z_sj;
  return entry;
}

double pairwise_misrank_exact(double pi_i, double pi_j, std::uint64_t m) {
  check_probability(pi_i, "pi_i");
  check_probability(pi_j, "pi_j");
  if (pi_i + pi_j > 1.0 + 1e-12)
    throw std::invalid_argument("pi_i + pi_j exceeds 1");
  if (m < 1) throw std::invalid_argument("m must be at least 1");
  if (m > 500)
    throw std::invalid_argument("exact misranking is O(m^2); use the CLT form above m = 500");

  const double pi_rest = std::max(0.0, 1.0 - pi_i - pi_j);
  const double log_m_fact = num::log_factorial(m);
  num::KahanSum acc;
  for (std::uint64_t li = 0; li <= m; ++li) {
    for (std::uint64_t lj = li; lj + li <= m; ++lj) {
      std::uint64_t rest = m - li - lj;
      double lp = log_m_fact - num::log_factorial(li) -
                  num::log_factorial(lj) - num::log_factorial(rest) +
                  count_log_prob(li, pi_i) + count_log_prob(lj, pi_j) +
                  count_log_prob(rest, pi_rest);
      if (lp > -745.0) acc.add(std::exp(lp));
    }
  }
  return std::min(1.0, acc.value());
}

double pairwise_misrank_clt(double mean_i, double mean_j, double var_i,
                            double var_j, double cov_ij, std::uint64_t m) {
  if (m < 1) throw std::invalid_argument("m must be at least 1");
  double denom_sq = var_i - 2.0 * cov_ij + var_j;
  if (!(denom_sq > 0.0))
    throw std::invalid_argument("degenerate difference variance");
  double rho = (mean_i - mean_j) / std::sqrt(denom_sq);
  return num::normal_cdf(-std::sqrt(static_cast<double>(m)) * rho);
}

double multinomial_rho(double pi_i, double pi_j) {
  check_probability(pi_i, "pi_i");
  check_probability(pi_j, "pi_j");
  if (pi_i + pi_j > 1.0 + 1e-12)
    throw std::invalid_argument("pi_i + pi_j exceeds 1");
  double denom_sq = pi_i * (1.0 - pi_i) + 2.0 * pi_i * pi_j +
                    pi_j * (1.0 - pi_j);
  if (!(denom_sq > 0.0))
    throw std::invalid_argument("degenerate pair: both probabilities vanish");
  return (pi_i - pi_j) / std::sqrt(denom_sq);
}

double pairwise_misrank_clt_multinomial(double pi_i, double pi_j,
                                        std::uint64_t m) {
  if (m < 1) throw std::invalid_argument("m must be at least 1");
  return num::normal_cdf(-std::sqrt(static_cast<double>(m)) *
                         multinomial_rho(pi_i, pi_j));
}

MisrankBound basket_misrank_bound(std::span<const double> pi_sorted, NodeId k,
                                  std::uint64_t m,
                                  std::optional<NodeId> j_star) {
  const auto n = static_cast<NodeId>(pi_sorted.size());
  check_sorted_desc(pi_sorted);
  if (k < 1 || k >= n)
    throw std::invalid_argument("basket bound needs 1 <= k < n");
  if (m < 1) throw std::invalid_argument("m must be at least 1");
  if (pi_sorted[k - 1] == pi_sorted[k])
    throw std::invalid_argument("pi_k equals pi_{k+1}: the basket is ill-defined");
  if (j_star && (*j_star <= k || *j_star > n))
    throw std::invalid_argument("j_star must lie in (k, n]");

  const double sqrt_m = std::sqrt(static_cast<double>(m));
  const NodeId scan_hi = j_star ? *j_star : std::min<NodeId>(n, k + 1024);
  const NodeId scan_lo = j_star ? *j_star : k + 1;

  // Per-rank-j sums over the basket rows, 1-based rank j in (k, scan_hi].
  std::vector<double> inner(scan_hi - k, 0.0);
  std::vector<double> tail_factor(scan_hi - k, 0.0);
  for (NodeId j = k + 1; j <= scan_hi; ++j) {
    num::KahanSum phi_sum, exp_sum;
    for (NodeId i = 1; i <= k; ++i) {
      double rho = multinomial_rho(pi_sorted[i - 1], pi_sorted[j - 1]);
      phi_sum.add(num::normal_cdf(-sqrt_m * rho));
      exp_sum.add(std::exp(-0.5 * rho * rho * static_cast<double>(m)));
    }
    inner[j - k - 1] = phi_sum.value();
    tail_factor[j - k - 1] = exp_sum.value();
  }

  double best = std::numeric_limits<double>::infinity();
  NodeId best_j = scan_lo;
  num::KahanSum prefix;
  for (NodeId j = scan_lo; j <= scan_hi; ++j) {
    for (NodeId q = (j == scan_lo ? k + 1 : j); q <= j; ++q)
      prefix.add(inner[q - k - 1]);
    double tail = static_cast<double>(n - j) * kInvSqrt2Pi *
                  tail_factor[j - k - 1];
    double candidate = prefix.value() + tail;
    if (candidate < best) {
      best = candidate;
      best_j = j;
    }
  }

  MisrankBound bound;
  bound.kind = MisrankKind::basket_bonferroni;
  bound.raw = best;
  bound.value = std::clamp(best, 0.0, 1.0);
  bound.k = k;
  bound.m = m;
  bound.j_star = best_j;
  return bound;
}

MisrankBound list_misrank_bound(std::span<const double> pi_sorted, NodeId k,
                                std::uint64_t m,
                                std::optional<NodeId> j_star) {
  const auto n = static_cast<NodeId>(pi_sorted.size());
  check_sorted_desc(pi_sorted);
  if (k < 1 || k > n)
    throw std::invalid_argument("list bound needs 1 <= k <= n");
  if (m < 1) throw std::invalid_argument("m must be at least 1");
  for (NodeId i = 1; i <= std::min<NodeId>(k, n - 1); ++i)
    if (pi_sorted[i - 1] == pi_sorted[i])
      throw std::invalid_argument("tied scores: the ordered list is ill-defined");
  if (j_star && (*j_star <= k || *j_star > n))
    throw std::invalid_argument("j_star must lie in (k, n]");

  const double sqrt_m = std::sqrt(static_cast<double>(m));
  num::KahanSum adjacent;
  for (NodeId i = 1; i < k; ++i)
    adjacent.add(num::normal_cdf(
        -sqrt_m * multinomial_rho(pi_sorted[i - 1], pi_sorted[i])));

  double best_tail = 0.0;
  NodeId best_j = k;
  if (k < n) {
    const NodeId scan_hi = j_star ? *j_star : std::min<NodeId>(n, k + 1024);
    const NodeId scan_lo = j_star ? *j_star : k + 1;
    best_tail = std::numeric_limits<double>::infinity();
    num::KahanSum prefix;
    for (NodeId j = scan_lo; j <= scan_hi; ++j) {
      for (NodeId q = (j == scan_lo ? k + 1 : j); q <= j; ++q)
        prefix.add(num::normal_cdf(
            -sqrt_m * multinomial_rho(pi_sorted[k - 1], pi_sorted[q - 1])));
      double rho_split = multinomial_rho(pi_sorted[k - 1], pi_sorted[j - 1]);
      double tail = static_cast<double>(n - j) * kInvSqrt2Pi *
                    std::exp(-0.5 * rho_split * rho_split *
                             static_cast<double>(m));
      double candidate = prefix.value() + tail;
      if (candidate < best_tail) {
        best_tail = candidate;
        best_j = j;
      }
    }
  }

  MisrankBound bound;
  bound.kind = MisrankKind::list_bonferroni;
  bound.raw = adjacent.value() + best_tail;
  bound.value = std::clamp(bound.raw, 0.0, 1.0);
  bound.k = k;
  bound.m = m;
  bound.j_star = best_j;
  return bound;
}

double order_statistic_cdf(double p_head, std::uint64_t s, std::uint64_t m,
                           OrderStatMode mode) {
  check_probability(p_head, "p_head");
  if (m < 1) throw std::invalid_argument("m must be at least 1");
  if (s < 1 || s > m) throw std::invalid_argument("s must lie in [1, m]");
  if (mode == OrderStatMode::sum) return num::binomial_upper_tail(m, p_head, s);
  return num::reg_incomplete_beta(static_cast<double>(s),
                                  static_cast<double>(m - s + 1), p_head);
}

double hit_probability(double pi_j, std::uint64_t r, std::uint64_t m) {
  check_probability(pi_j, "pi_j");
  if (r < 1) throw std::invalid_argument("r must be at least 1");
  if (m < 1) throw std::invalid_argument("m must be at least 1");
  return num::binomial_upper_tail(m, pi_j, r);
}

double poisson_mu(std::span<const double> pi_tail, double m, std::uint64_t y) {
  if (!(m > 0.0)) throw std::invalid_argument("m must be positive");
  num::KahanSum acc;
  for (double p : pi_tail) {
    check_probability(p, "pi_tail");
    acc.add(num::poisson_upper_tail(m * p, y));
  }
  return acc.value();
}

double expected_m1(std::span<const double> pi_sorted, NodeId k, double m) {
  const auto n = static_cast<NodeId>(pi_sorted.size());
  check_sorted_desc(pi_sorted);
  if (k < 1 || k > n) throw std::invalid_argument("k must lie in [1, n]");
  if (!(m >= 0.0)) throw std::invalid_argument("m must be nonnegative");

  double max_lambda = 0.0;
  for (double p : pi_sorted) max_lambda = std::max(max_lambda, m * p);

  // mu(y) and the head cdfs advance together, one y at a time.
  double mu = static_cast<double>(n - k);
  std::vector<double> head_cdf(k, 0.0);
  num::KahanSum series;
  const double y_cap =
      max_lambda + 60.0 * std::sqrt(max_lambda + 1.0) + 200.0;
  for (std::uint64_t y = 0;; ++y) {
    num::KahanSum head_pmf;
    for (NodeId i = 0; i < k; ++i) {
      double pmf = std::exp(num::log_poisson_pmf(m * pi_sorted[i], y));
      head_pmf.add(pmf);
      head_cdf[i] += pmf;
    }
    series.add(mu * head_pmf.value());

    double remaining = 0.0;
    for (NodeId i = 0; i < k; ++i)
      remaining += std::max(0.0, 1.0 - head_cdf[i]);
    if (remaining < 1e-13 && static_cast<double>(y) > max_lambda) break;
    if (static_cast<double>(y) > y_cap) break;

    double tail_pmf = 0.0;
    for (NodeId j = k; j < n; ++j)
      tail_pmf += std::exp(num::log_poisson_pmf(m * pi_sorted[j], y));
    mu = std::max(0.0, mu - tail_pmf);
  }
  return static_cast<double>(k) - series.value() / static_cast<double>(k);
}

RecommendedM recommended_m(double a, double epsilon, double alpha,
                           std::uint64_t k, double pi_k_plus_1) {
  if (!(a > 0.0 && a < 1.0))
    throw std::invalid_argument("a must lie in (0, 1)");
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw std::invalid_argument("epsilon must lie in (0, 1)");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("alpha must lie in (0, 1)");
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  if (std::abs(pi_k_plus_1 - (1.0 - epsilon) * a) > 1e-9)
    throw std::invalid_argument(
        "inconsistent inputs: pi_{k+1} must equal (1 - epsilon) a");

  double log_arg = epsilon * pi_k_plus_1 * alpha * static_cast<double>(k);
  if (log_arg >= 1.0)
    throw std::invalid_argument("epsilon pi_{k+1} alpha k must stay below 1");
  double m_real = 2.0 / (a * epsilon * epsilon) * (-std::log(log_arg));
  if (!(m_real < 1e15))
    throw std::invalid_argument("recommended m overflows a practical range");

  RecommendedM rec;
  rec.m = static_cast<std::uint64_t>(std::ceil(m_real));
  rec.y = static_cast<std::uint64_t>(
      std::ceil(static_cast<double>(rec.m) * a - 1e-9));
  rec.epsilon_exceeds_1_over_y =
      epsilon > 1.0 / static_cast<double>(rec.y);
  double tail_nodes =
      std::max(1.0, std::floor(1.0 / pi_k_plus_1));
  rec.mu_y = tail_nodes * num::poisson_upper_tail(
                              static_cast<double>(rec.m) * pi_k_plus_1, rec.y);
  rec.condition_i_holds = rec.mu_y < alpha * static_cast<double>(k);
  return rec;
}

double expected_m0_empirical(const Graph& g, const WalkConfig& cfg, NodeId k,
                             std::uint64_t m, std::uint32_t trials,
                             std::uint64_t rng_seed, int threads) {
  if (trials < 1) throw std::invalid_argument("trials must be at least 1");
  const TopKReport truth = top_k(solve_ppr(g, cfg), k);
  num::KahanSum total;
  for (std::uint32_t t = 0; t < trials; ++t) {
    std::uint64_t seed = mix64(rng_seed ^ (static_cast<std::uint64_t>(t) + 1));
    WalkOutcome outcome = run_end_point(g, cfg, m, seed, threads);
    total.add(static_cast<double>(
        compare_baskets(truth, top_k(estimate(outcome, cfg), k)).correct));
  }
  return total.value() / static_cast<double>(trials);
}

}  // namespace pprtopk
