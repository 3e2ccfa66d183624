#include "pprtopk/numerics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace pprtopk::num {

double normal_cdf(double x) { return 0.5 * std::erfc(-x * M_SQRT1_2); }

double log_factorial(std::uint64_t n) {
  return std::lgamma(static_cast<double>(n) + 1.0);
}

double log_binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return -std::numeric_limits<double>::infinity();
  return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

double log_binomial_pmf(std::uint64_t m, double p, std::uint64_t nu) {
  if (nu > m) return -std::numeric_limits<double>::infinity();
  if (p <= 0.0)
    return nu == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
  if (p >= 1.0)
    return nu == m ? 0.0 : -std::numeric_limits<double>::infinity();
  double n = static_cast<double>(nu);
  double rest = static_cast<double>(m - nu);
  return log_binomial(m, nu) + n * std::log(p) + rest * std::log1p(-p);
}

double binomial_upper_tail(std::uint64_t m, double p, std::uint64_t r) {
  if (p < 0.0 || p > 1.0)
    throw std::invalid_argument("binomial_upper_tail: p outside [0,1]");
  if (r == 0) return 1.0;
  if (r > m) return 0.0;
  if (p <= 0.0) return 0.0;
  if (p >= 1.0) return 1.0;
  // Sum the shorter side in linear space from log-space terms.
  double mean = static_cast<double>(m) * p;
  KahanSum acc;
  if (static_cast<double>(r) > mean) {
    // Terms decrease past the mode, which lies below r here.
    for (std::uint64_t nu = r; nu <= m; ++nu) {
      double lp = log_binomial_pmf(m, p, nu);
      double term = lp < -745.0 ? 0.0 : std::exp(lp);
      acc.add(term);
      if (term <= acc.value() * 1e-18) break;
    }
    return std::min(1.0, acc.value());
  }
  for (std::uint64_t nu = 0; nu < r; ++nu) {
    double lp = log_binomial_pmf(m, p, nu);
    if (lp >= -745.0) acc.add(std::exp(lp));
  }
  return std::min(1.0, std::max(0.0, 1.0 - acc.value()));
}

namespace {

// Continued fraction for the regularized incomplete beta, evaluated
// with the modified Lentz algorithm.
double beta_cf(double a, double b, double x) {
  const double tiny = 1e-300;
  const double eps = 1e-16;
  const int max_terms = 400;

  double qab = a + b;
  double qap = a + 1.0;
  double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double h = d;
  for (int mi = 1; mi <= max_terms; ++mi) {
    double m2 = 2.0 * mi;
    double aa = mi * (b - mi) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + mi) * (qab + mi) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < eps) break;
  }
  return h;
}

}  // namespace

double reg_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0))
    throw std::invalid_argument("reg_incomplete_beta: a, b must be positive");
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                     a * std::log(x) + b * std::log1p(-x);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return std::exp(log_front) * beta_cf(a, b, x) / a;
  }
  return 1.0 - std::exp(log_front) * beta_cf(b, a, 1.0 - x) / b;
}

double log_poisson_pmf(double lambda, std::uint64_t y) {
  if (lambda < 0.0)
    throw std::invalid_argument("log_poisson_pmf: negative mean");
  if (lambda == 0.0)
    return y == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
  double yd = static_cast<double>(y);
  return yd * std::log(lambda) - lambda - log_factorial(y);
}

double poisson_upper_tail(double lambda, std::uint64_t y) {
  if (lambda < 0.0)
    throw std::invalid_argument("poisson_upper_tail: negative mean");
  if (y == 0) return 1.0;
  if (lambda == 0.0) return 0.0;
  KahanSum acc;
  if (static_cast<double>(y) > lambda) {
    // Terms decrease past the mode, which lies below y here.
    for (std::uint64_t nu = y;; ++nu) {
      double lp = log_poisson_pmf(lambda, nu);
      double term = lp < -745.0 ? 0.0 : std::exp(lp);
      acc.add(term);
      if (term <= acc.value() * 1e-18) break;
    }
    return std::min(1.0, acc.value());
  }
  for (std::uint64_t nu = 0; nu < y; ++nu) {
    double lp = log_poisson_pmf(lambda, nu);
    if (lp >= -745.0) acc.add(std::exp(lp));
  }
  return std::min(1.0, std::max(0.0, 1.0 - acc.value()));
}

}  // namespace pprtopk::num
