#include "qcorr/dist.hpp"

#include <cmath>
#include <numbers>

namespace qcorr {

double frechet_cdf(double x) {
  if (!(x > 0.0) || !std::isfinite(x))
    throw std::domain_error("frechet_cdf: x must be a positive real");
  return std::exp(-1.0 / x);
}

double frechet_quantile(double p) {
  if (!(p > 0.0) || !(p < 1.0))
    throw std::domain_error("frechet_quantile: p must lie in (0,1)");
  return -1.0 / std::log(p);
}

double erlang2_survival(double x, double rate) {
  if (!(x >= 0.0) || !std::isfinite(x))
    throw std::domain_error("erlang2_survival: x must be a nonnegative real");
  if (!(rate > 0.0) || !std::isfinite(rate))
    throw std::domain_error("erlang2_survival: rate must be positive");
  const double rx = rate * x;
  return (1.0 + rx) * std::exp(-rx);
}

double erlang2_cdf(double x, double rate) {
  return 1.0 - erlang2_survival(x, rate);
}

double erlang2_upper_quantile(double alpha, double rate) {
  if (!(alpha > 0.0) || !(alpha <= 1.0))
    throw std::domain_error("erlang2_upper_quantile: alpha must lie in (0,1]");
  if (!(rate > 0.0) || !std::isfinite(rate))
    throw std::domain_error("erlang2_upper_quantile: rate must be positive");
  if (alpha == 1.0) return 0.0;

  double lo = 0.0;
  double hi = 50.0 / rate;
  while (erlang2_survival(hi, rate) > alpha) hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (erlang2_survival(mid, rate) > alpha)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double std_normal_cdf(double z) {
  return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

namespace {

// Continued fraction for the incomplete beta function (modified Lentz).
double beta_cont_fraction(double a, double b, double x) {
  constexpr double tiny = 1e-300;
  constexpr double eps = 1e-15;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= 300; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < eps) break;
  }
  return h;
}

double incomplete_beta_reg(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double ln_bt = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                       a * std::log(x) + b * std::log1p(-x);
  const double bt = std::exp(ln_bt);
  if (x < (a + 1.0) / (a + b + 2.0))
    return bt * beta_cont_fraction(a, b, x) / a;
  return 1.0 - bt * beta_cont_fraction(b, a, 1.0 - x) / b;
}

}  // namespace

double student_t_cdf(double t, double df) {
  if (!(df > 0.0) || !std::isfinite(df))
    throw std::domain_error("student_t_cdf: df must be positive");
  if (std::isnan(t)) throw std::domain_error("student_t_cdf: t is NaN");
  if (std::isinf(t)) return t > 0 ? 1.0 : 0.0;
  const double p = 0.5 * incomplete_beta_reg(0.5 * df, 0.5, df / (df + t * t));
  return t >= 0.0 ? 1.0 - p : p;
}

}  // namespace qcorr
