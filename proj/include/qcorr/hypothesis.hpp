#pragma once

#include <optional>

#include <Eigen/Core>

#include "qcorr/quotient.hpp"
#include "qcorr/sample.hpp"

namespace qcorr {

// Outcome of a gamma test: p_value = erlang2_survival(statistic, rate) and
// reject <=> p_value < alpha (equivalently statistic > upper quantile).
struct GammaTestReport {
  double statistic = 0.0;  // n * q
  double rate = 1.0;       // 1 full-sample, 1 - exp(-1/u) tail
  double p_value = 1.0;
  double alpha = 0.05;
  bool reject = false;
  Variant variant = Variant::plain;
  std::optional<double> threshold_percentile;
  Eigen::Index n = 0;
  bool degenerate = false;
};

GammaTestReport gamma_independence_test(double q, Eigen::Index n, double alpha,
                                        Variant variant = Variant::plain);
GammaTestReport gamma_independence_test(const QuotientSummary& summary, double alpha);

GammaTestReport gamma_tail_test(double q_u, Eigen::Index n, double u, double alpha,
                                Variant variant = Variant::tail);
GammaTestReport gamma_tail_test(const QuotientSummary& summary, double alpha,
                                std::optional<double> threshold_percentile = std::nullopt);

enum class Alternative { two_sided, greater, less };

struct FisherReport {
  double r = 0.0;
  double w = 0.0;  // atanh(r)
  double z = 0.0;  // w * sqrt(n - 3)
  double p_value = 1.0;
  double alpha = 0.05;
  bool reject = false;
  Eigen::Index n = 0;
};

FisherReport fisher_z_from_r(double r, Eigen::Index n, double alpha,
                             Alternative alternative = Alternative::two_sided);
FisherReport fisher_z_test(const PairedSample& sample, double alpha,
                           Alternative alternative = Alternative::two_sided);

// Empirical tail dependence index at threshold u, conditioning on
// y-exceedances (or on x-exceedances when condition_on_x is set).
struct TailIndexEstimate {
  double lambda_hat = 0.0;
  double u = 0.0;
  Eigen::Index joint_count = 0;
  Eigen::Index marginal_count = 0;
};

TailIndexEstimate tail_index_estimate(const FrechetScores& scores, double u,
                                      bool condition_on_x = false);

}  // namespace qcorr
