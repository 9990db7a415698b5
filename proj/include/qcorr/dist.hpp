#pragma once

#include <stdexcept>

namespace qcorr {

// Unit Frechet distribution, F(x) = exp(-1/x) for x > 0.
double frechet_cdf(double x);

// Inverse of frechet_cdf: -1/log(p) for p in (0,1).
double frechet_quantile(double p);

// Erlang-2 (gamma with shape 2) in the rate parameterization:
// survival(x) = (1 + rate*x) * exp(-rate*x) for x >= 0.
double erlang2_survival(double x, double rate);
double erlang2_cdf(double x, double rate);

// x such that erlang2_survival(x, rate) == alpha, for alpha in (0, 1].
// Safeguarded bisection on the closed-form survival.
double erlang2_upper_quantile(double alpha, double rate);

// Standard normal CDF via erfc; absolute error well below 1e-7.
double std_normal_cdf(double z);

// Student t CDF with df > 0 degrees of freedom, via the regularized
// incomplete beta function. Needed by the parametric marginal transform.
double student_t_cdf(double t, double df);

// Reference gamma law of the test statistics: shape fixed at 2, rate 1 for
// the full-sample test and 1 - exp(-1/u) for the tail test at threshold u.
struct GammaRef {
  static constexpr int shape = 2;
  double rate;

  explicit GammaRef(double rate_in) : rate(rate_in) {
    if (!(rate > 0.0)) throw std::domain_error("GammaRef: rate must be positive");
  }

  double survival(double x) const { return erlang2_survival(x, rate); }
  double cdf(double x) const { return erlang2_cdf(x, rate); }
  double upper_quantile(double alpha) const { return erlang2_upper_quantile(alpha, rate); }
};

}  // namespace qcorr
