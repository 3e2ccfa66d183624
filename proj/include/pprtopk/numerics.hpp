#pragma once

#include <cstdint>
#include <span>

namespace pprtopk::num {

/// Compensated (Kahan) accumulator for long probability sums.
struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    double y = x - carry;
    double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  double value() const { return sum; }
};

/// Standard normal CDF via erfc; accurate to ~1e-15 over the full range.
double normal_cdf(double x);

double log_factorial(std::uint64_t n);
double log_binomial(std::uint64_t n, std::uint64_t k);

/// log of the Binomial(m, p) pmf at nu; p in [0,1] handled exactly at
/// the endpoints.
double log_binomial_pmf(std::uint64_t m, double p, std::uint64_t nu);

/// P{Bin(m, p) >= r}, summed in log space term by term. r > m gives 0.
double binomial_upper_tail(std::uint64_t m, double p, std::uint64_t r);

/// Regularized incomplete beta I_x(a, b) by continued fraction.
double reg_incomplete_beta(double a, double b, double x);

double log_poisson_pmf(double lambda, std::uint64_t y);

/// P{Poisson(lambda) >= y}; sums whichever tail is shorter.
double poisson_upper_tail(double lambda, std::uint64_t y);

}  // namespace pprtopk::num
