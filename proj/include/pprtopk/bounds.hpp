#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "pprtopk/graph.hpp"

namespace pprtopk {

/// Standard deviation of the end-point estimator for a node with value
/// pi_k: sqrt(pi_k (1 - pi_k) / m).
double sigma_end_point(double pi_k, std::uint64_t m);

/// Standard deviation of the complete-path estimator:
/// sqrt(pi_k_of_s (2 pi_k_of_k - (1-c) - pi_k_of_s) / m), where
/// pi_k_of_s is the seed's value at k and pi_k_of_k the value at k when
/// k itself is the seed. `approximate` replaces pi_k_of_k by (1-c).
double sigma_complete_path(double pi_k_of_s, double pi_k_of_k, double c,
                           std::uint64_t m, bool approximate = false);

struct CovEntry {
  NodeId s = 0;
  NodeId i = 0;
  NodeId j = 0;
  double value = 0.0;  // per-run covariance of visit counts N_i, N_j
};

/// Covariance of the visit-count vector for seed cfg.seed_node:
/// Sigma_ij = z_si z_ij + z_ji z_sj - delta_ij z_si - z_si z_sj.
/// Resolvent entries come from PPR solves started at s, i and j over
/// one shared transition view; memory stays O(n).
CovEntry covariance_entry(const Graph& g, const WalkConfig& cfg, NodeId i,
                          NodeId j, double tol = 1e-12);

/// Exact P{L_i <= L_j} for the trinomial (i, j, rest) end-point counts
/// after m runs. O(m^2) terms; m above 500 is rejected in favor of the
/// CLT form.
double pairwise_misrank_exact(double pi_i, double pi_j, std::uint64_t m);

/// CLT misranking probability 1 - Phi(sqrt(m) rho) for two estimators
/// with the given per-run means, variances and covariance.
double pairwise_misrank_clt(double mean_i, double mean_j, double var_i,
                            double var_j, double cov_ij, std::uint64_t m);

/// rho_ij for multinomial end-point counts:
/// (pi_i - pi_j) / sqrt(pi_i(1-pi_i) + 2 pi_i pi_j + pi_j(1-pi_j)).
double multinomial_rho(double pi_i, double pi_j);

/// CLT misranking probability specialized to end-point counts.
double pairwise_misrank_clt_multinomial(double pi_i, double pi_j,
                                        std::uint64_t m);

enum class MisrankKind {
  pairwise_exact_multinomial,
  pairwise_clt,
  basket_bonferroni,
  list_bonferroni,
};

struct MisrankBound {
  MisrankKind kind = MisrankKind::basket_bonferroni;
  double value = 0.0;  // clipped to [0, 1]
  double raw = 0.0;    // unclipped sum, useful for log-rate fits
  NodeId k = 0;
  std::uint64_t m = 0;
  NodeId j_star = 0;  // split point actually used
};

/// Bonferroni upper bound on the probability that the top-k basket is
/// misranked, with the tail beyond j_star collapsed into a Gaussian
/// tail term. j_star = nullopt scans k+1..min(n, k+1024) for the
/// minimizing split; j_star = n gives the plain all-pairs form.
/// Throws std::invalid_argument when pi_k == pi_{k+1}.
MisrankBound basket_misrank_bound(std::span<const double> pi_sorted, NodeId k,
                                  std::uint64_t m,
                                  std::optional<NodeId> j_star = std::nullopt);

/// Same aggregation for the ordered top-k list: adjacent pairs inside
/// the list plus the rank-k-vs-tail terms.
MisrankBound list_misrank_bound(std::span<const double> pi_sorted, NodeId k,
                                std::uint64_t m,
                                std::optional<NodeId> j_star = std::nullopt);

enum class OrderStatMode { sum, beta };

/// P{X_(s) <= k} for the s-th order statistic of m end-point draws,
/// as a function of the head mass p_head = pi_1 + ... + pi_k only.
/// Both modes agree to ~1e-12; they follow independent numeric routes.
double order_statistic_cdf(double p_head, std::uint64_t s, std::uint64_t m,
                           OrderStatMode mode);

/// P{node j is hit at least r times in m runs} (binomial upper tail).
double hit_probability(double pi_j, std::uint64_t r, std::uint64_t m);

/// mu(y) = sum over tail nodes of P{Poisson(m pi_j) >= y}: the expected
/// number of outside-top-k nodes with y or more Poissonized hits.
double poisson_mu(std::span<const double> pi_tail, double m, std::uint64_t y);

/// Poissonized E(M1) = k - (1/k) sum_y mu(y) sum_{i<=k} P(Y_i = y),
/// with Y_i ~ Poisson(m pi_i) independent. Reported raw (it may go
/// negative for tiny m).
double expected_m1(std::span<const double> pi_sorted, NodeId k, double m);

struct RecommendedM {
  std::uint64_t m = 0;            // ceil(2 a^-1 eps^-2 (-log(eps pi_{k+1} alpha k)))
  std::uint64_t y = 0;            // ceil(m a)
  double mu_y = 0.0;              // worst-case-tail mu(y) at the recommended m
  bool condition_i_holds = false;  // mu_y < alpha k
  bool epsilon_exceeds_1_over_y = false;  // theorem hypothesis eps > 1/y
};

/// Sufficient run count for E(M1) > (1-alpha) k under the Poissonized
/// model, with the hypothesis pi_{k+1} = (1-eps) a enforced to 1e-9.
/// The numeric recheck of the mu(y) < alpha k condition uses the
/// worst-case tail allowed by the hypotheses: floor(1/pi_{k+1}) nodes
/// all at pi_{k+1}.
RecommendedM recommended_m(double a, double epsilon, double alpha,
                           std::uint64_t k, double pi_k_plus_1);

/// Mean number of correctly identified top-k members over `trials`
/// independent end-point simulations with m runs each, against the
/// exact basket.
double expected_m0_empirical(const Graph& g, const WalkConfig& cfg, NodeId k,
                             std::uint64_t m, std::uint32_t trials,
                             std::uint64_t rng_seed, int threads = 0);

}  // namespace pprtopk
