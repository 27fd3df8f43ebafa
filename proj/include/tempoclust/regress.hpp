#pragma once

#include <vector>

#include "tempoclust/error.hpp"

namespace tempoclust {

struct RegressionFit {
  int n = 0;
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  double slope_se = 0.0;
  double t_stat = 0.0;  // NaN when degenerate
  int df = 0;           // n - 2
  double p_value = 1.0;
  bool degenerate = false;
};

// Simple OLS of y on x. Requires n >= 2 and non-constant x (DomainError
// otherwise). df = n - 2; p is the two-tailed slope test. Zero residual
// variance or df = 0 yields degenerate = true, slope_se = 0, t = NaN, p = 1.
RegressionFit ols_fit(const std::vector<double>& x, const std::vector<double>& y);

// Regularized incomplete beta I_x(a, b) for a, b > 0 and x in [0, 1],
// continued-fraction evaluation accurate to ~1e-14.
double incomplete_beta(double a, double b, double x);

// Student t CDF with integer df >= 1 via the incomplete beta.
double t_cdf(double t, int df);

// Two-tailed tail mass 2 * (1 - t_cdf(|t|)), computed without cancellation;
// clamped into (0, 1].
double p_two_tailed(double t, int df);

// Sample Pearson correlation; constant input raises DomainError.
double pearson_r(const std::vector<double>& a, const std::vector<double>& b);

// Regularized incomplete gamma P(a, x) and Q(a, x) = 1 - P(a, x), a > 0, x >= 0.
double gamma_p(double a, double x);
double gamma_q(double a, double x);

// Chi-square survival function Q(df/2, x/2), clamped into (0, 1].
double chi_square_sf(double x, int df);

}  // namespace tempoclust
