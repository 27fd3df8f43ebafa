#include "tempoclust/regress.hpp"

#include <cmath>
#include <limits>

namespace tempoclust {

namespace {

constexpr double kFpMin = 1e-300;
constexpr double kEps = 3e-15;
constexpr int kMaxIter = 300;

// Continued fraction for the incomplete beta (modified Lentz).
double beta_cf(double a, double b, double x) {
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kFpMin) d = kFpMin;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) <= kEps) break;
  }
  return h;
}

// Series for the lower incomplete gamma P(a, x), valid for x < a + 1.
double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int n = 0; n < kMaxIter; ++n) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::fabs(del) < std::fabs(sum) * kEps) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Continued fraction for the upper incomplete gamma Q(a, x), x >= a + 1.
double gamma_q_cf(double a, double x) {
  double b = x + 1.0 - a;
  double c = 1.0 / kFpMin;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= kMaxIter; ++i) {
    const double an = -static_cast<double>(i) * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    c = b + an / c;
    if (std::fabs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) <= kEps) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double clamp01_open(double p) {
  if (p > 1.0) return 1.0;
  if (p < std::numeric_limits<double>::min()) {
    return std::numeric_limits<double>::min();
  }
  return p;
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw DomainError("incomplete_beta requires a > 0 and b > 0");
  }
  if (!(x >= 0.0 && x <= 1.0)) {
    throw DomainError("incomplete_beta requires x in [0, 1]");
  }
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double front = std::exp(std::lgamma(a + b) - std::lgamma(a) -
                                std::lgamma(b) + a * std::log(x) +
                                b * std::log1p(-x));
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * beta_cf(a, b, x) / a;
  }
  return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

double t_cdf(double t, int df) {
  if (df < 1) throw DomainError("t_cdf requires df >= 1");
  if (t == 0.0) return 0.5;
  const double v = static_cast<double>(df);
  const double x = v / (v + t * t);
  const double tail = 0.5 * incomplete_beta(0.5 * v, 0.5, x);
  return t > 0.0 ? 1.0 - tail : tail;
}

double p_two_tailed(double t, int df) {
  if (df < 1) throw DomainError("p_two_tailed requires df >= 1");
  if (std::isnan(t)) return 1.0;
  const double v = static_cast<double>(df);
  // 2 * (1 - cdf(|t|)) equals the beta tail directly; no cancellation.
  const double p = incomplete_beta(0.5 * v, 0.5, v / (v + t * t));
  return clamp01_open(p);
}

RegressionFit ols_fit(const std::vector<double>& x,
                      const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n != y.size()) throw DomainError("ols_fit requires equal-length inputs");
  if (n < 2) throw DomainError("ols_fit requires n >= 2");

  double x_mean = 0.0, y_mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    x_mean += x[i];
    y_mean += y[i];
  }
  x_mean /= static_cast<double>(n);
  y_mean /= static_cast<double>(n);

  double sxx = 0.0, sxy = 0.0, ss_tot = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - x_mean;
    const double dy = y[i] - y_mean;
    sxx += dx * dx;
    sxy += dx * dy;
    ss_tot += dy * dy;
  }
  if (sxx <= 0.0) throw DomainError("ols_fit requires non-constant x");

  RegressionFit fit;
  fit.n = static_cast<int>(n);
  fit.slope = sxy / sxx;
  fit.intercept = y_mean - fit.slope * x_mean;
  fit.df = static_cast<int>(n) - 2;

  double ss_res = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = y[i] - fit.intercept - fit.slope * x[i];
    ss_res += e * e;
  }

  if (ss_tot > 0.0) {
    fit.r_squared = 1.0 - ss_res / ss_tot;
    if (fit.r_squared < 0.0) fit.r_squared = 0.0;
    if (fit.r_squared > 1.0) fit.r_squared = 1.0;
  } else {
    fit.r_squared = 0.0;
  }

  // Collinear data leaves residuals at rounding scale; grade that as zero.
  const bool zero_residual = ss_res <= 1e-12 * ss_tot;
  if (fit.df < 1 || ss_tot <= 0.0 || zero_residual) {
    fit.degenerate = true;
    fit.slope_se = 0.0;
    fit.t_stat = std::numeric_limits<double>::quiet_NaN();
    fit.p_value = 1.0;
    return fit;
  }

  fit.slope_se = std::sqrt(ss_res / static_cast<double>(fit.df) / sxx);
  fit.t_stat = fit.slope / fit.slope_se;
  fit.p_value = p_two_tailed(fit.t_stat, fit.df);
  return fit;
}

double pearson_r(const std::vector<double>& a, const std::vector<double>& b) {
  const std::size_t n = a.size();
  if (n != b.size()) throw DomainError("pearson_r requires equal-length inputs");
  if (n < 2) throw DomainError("pearson_r requires n >= 2");
  double a_mean = 0.0, b_mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    a_mean += a[i];
    b_mean += b[i];
  }
  a_mean /= static_cast<double>(n);
  b_mean /= static_cast<double>(n);
  double saa = 0.0, sbb = 0.0, sab = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double da = a[i] - a_mean;
    const double db = b[i] - b_mean;
    saa += da * da;
    sbb += db * db;
    sab += da * db;
  }
  if (saa <= 0.0 || sbb <= 0.0) {
    throw DomainError("pearson_r is undefined for a constant series");
  }
  double r = sab / std::sqrt(saa * sbb);
  if (r > 1.0) r = 1.0;
  if (r < -1.0) r = -1.0;
  return r;
}

double gamma_p(double a, double x) {
  if (!(a > 0.0)) throw DomainError("gamma_p requires a > 0");
  if (!(x >= 0.0)) throw DomainError("gamma_p requires x >= 0");
  if (x == 0.0) return 0.0;
  if (x < a + 1.0) return gamma_p_series(a, x);
  return 1.0 - gamma_q_cf(a, x);
}

double gamma_q(double a, double x) {
  if (!(a > 0.0)) throw DomainError("gamma_q requires a > 0");
  if (!(x >= 0.0)) throw DomainError("gamma_q requires x >= 0");
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_cf(a, x);
}

double chi_square_sf(double x, int df) {
  if (df < 1) throw DomainError("chi_square_sf requires df >= 1");
  if (!(x >= 0.0)) throw DomainError("chi_square_sf requires x >= 0");
  return clamp01_open(gamma_q(0.5 * static_cast<double>(df), 0.5 * x));
}

}  // namespace tempoclust
