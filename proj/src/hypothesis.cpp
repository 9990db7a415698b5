#include "qcorr/hypothesis.hpp"

#include <cmath>
#include <stdexcept>

#include "qcorr/dist.hpp"

namespace qcorr {

namespace {

GammaTestReport make_report(double q, Eigen::Index n, double rate, double alpha, Variant variant,
                            std::optional<double> threshold_percentile, bool degenerate) {
  if (!(q >= 0.0) || !(q <= 1.0))
    throw std::domain_error("gamma test: q must lie in [0,1]");
  if (n < 2) throw std::domain_error("gamma test: need n >= 2");
  if (!(alpha > 0.0) || !(alpha < 1.0))
    throw std::domain_error("gamma test: alpha must lie in (0,1)");
  GammaTestReport r;
  r.statistic = static_cast<double>(n) * q;
  r.rate = rate;
  r.p_value = erlang2_survival(r.statistic, rate);
  r.alpha = alpha;
  // Strict inequality; a statistic exactly at the cutoff retains.
  r.reject = r.p_value < alpha;
  r.variant = variant;
  r.threshold_percentile = threshold_percentile;
  r.n = n;
  r.degenerate = degenerate;
  return r;
}

}  // namespace

GammaTestReport gamma_independence_test(double q, Eigen::Index n, double alpha, Variant variant) {
  return make_report(q, n, 1.0, alpha, variant, std::nullopt, false);
}

GammaTestReport gamma_independence_test(const QuotientSummary& summary, double alpha) {
  return make_report(summary.q, summary.n, 1.0, alpha, summary.variant, std::nullopt,
                     summary.degenerate);
}

GammaTestReport gamma_tail_test(double q_u, Eigen::Index n, double u, double alpha,
                                Variant variant) {
  if (!(u > 0.0) || !std::isfinite(u))
    throw std::domain_error("gamma_tail_test: threshold must be positive");
  const double rate = -std::expm1(-1.0 / u);  // 1 - e^{-1/u}
  return make_report(q_u, n, rate, alpha, variant, std::nullopt, false);
}

GammaTestReport gamma_tail_test(const QuotientSummary& summary, double alpha,
                                std::optional<double> threshold_percentile) {
  if (!summary.threshold)
    throw std::invalid_argument("gamma_tail_test: summary carries no threshold");
  const double u = *summary.threshold;
  if (!(u > 0.0)) throw std::domain_error("gamma_tail_test: threshold must be positive");
  const double rate = -std::expm1(-1.0 / u);
  auto r = make_report(summary.q, summary.n, rate, alpha, summary.variant, threshold_percentile,
                       summary.degenerate);
  return r;
}

FisherReport fisher_z_from_r(double r, Eigen::Index n, double alpha, Alternative alternative) {
  if (n < 4) throw std::domain_error("fisher_z: need n >= 4");
  if (!(alpha > 0.0) || !(alpha < 1.0))
    throw std::domain_error("fisher_z: alpha must lie in (0,1)");
  if (!(r >= -1.0) || !(r <= 1.0)) throw std::domain_error("fisher_z: r must lie in [-1,1]");
  FisherReport rep;
  rep.r = r;
  rep.w = std::atanh(r);  // +-inf at r = +-1; propagates to p = 0
  rep.z = rep.w * std::sqrt(static_cast<double>(n) - 3.0);
  switch (alternative) {
    case Alternative::two_sided:
      rep.p_value = 2.0 * std_normal_cdf(-std::fabs(rep.z));
      break;
    case Alternative::greater:
      rep.p_value = std_normal_cdf(-rep.z);
      break;
    case Alternative::less:
      rep.p_value = std_normal_cdf(rep.z);
      break;
  }
  rep.alpha = alpha;
  rep.reject = rep.p_value < alpha;
  rep.n = n;
  return rep;
}

FisherReport fisher_z_test(const PairedSample& sample, double alpha, Alternative alternative) {
  if (sample.n() < 4) throw std::domain_error("fisher_z_test: need n >= 4");
  const Eigen::ArrayXd dx = sample.xs - sample.xs.mean();
  const Eigen::ArrayXd dy = sample.ys - sample.ys.mean();
  const double sxx = (dx * dx).sum();
  const double syy = (dy * dy).sum();
  if (!(sxx > 0.0) || !(syy > 0.0))
    throw std::domain_error("fisher_z_test: constant margin, correlation undefined");
  const double r = std::clamp((dx * dy).sum() / std::sqrt(sxx * syy), -1.0, 1.0);
  return fisher_z_from_r(r, sample.n(), alpha, alternative);
}

TailIndexEstimate tail_index_estimate(const FrechetScores& scores, double u,
                                      bool condition_on_x) {
  if (!(u > 0.0) || !std::isfinite(u))
    throw std::domain_error("tail_index_estimate: threshold must be positive");
  const auto joint = ((scores.xs > u) && (scores.ys > u)).count();
  const auto marginal = condition_on_x ? (scores.xs > u).count() : (scores.ys > u).count();
  if (marginal == 0)
    throw std::domain_error("tail_index_estimate: no conditioning exceedances, estimate undefined");
  TailIndexEstimate e;
  e.lambda_hat = static_cast<double>(joint) / static_cast<double>(marginal);
  e.u = u;
  e.joint_count = joint;
  e.marginal_count = marginal;
  return e;
}

}  // namespace qcorr
