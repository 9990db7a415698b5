#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include <Eigen/Core>

#include "qcorr/sample.hpp"

namespace qcorr {

enum class Variant { plain, rank, empirical, tail, tail_rank };
enum class Aggregate { median, mean };

const char* variant_name(Variant v);

// The two max-quotients, the coefficient q = f(max_yx, max_xy) with
// f(x,y) = (x + y - 2)/(xy - 1), and how they were obtained.
struct QuotientSummary {
  double max_yx = 1.0;  // max_i ys[i]/xs[i]
  double max_xy = 1.0;  // max_i xs[i]/ys[i]
  double q = 1.0;
  Eigen::Index n = 0;
  std::optional<double> threshold;  // tail variants only
  Variant variant = Variant::plain;
  bool degenerate = false;  // both max-quotients equal 1
};

// (max_i ys/xs, max_i xs/ys); all entries must be positive and finite.
std::pair<double, double> max_quotient_pair(const Eigen::Ref<const Eigen::ArrayXd>& xs,
                                            const Eigen::Ref<const Eigen::ArrayXd>& ys);

// f(max_yx, max_xy), clamped to [0,1]; both arguments equal to 1 is the
// degenerate boundary and yields 1.
double quotient_correlation(double max_yx, double max_xy);

// Full-sample quotient correlation of the given scores; the variant tag
// follows the scores' transform.
QuotientSummary plain_quotient(const FrechetScores& scores);

// Threshold as the smaller of the two per-margin order statistics at
// ceil(percentile * n), 1-based.
struct ThresholdSpec {
  double percentile;
  double resolved_u;
};

ThresholdSpec select_threshold(const FrechetScores& scores, double percentile);

// Tail quotient correlation at threshold u > 0: scores at or below u are
// censored to u (i.e. u + exceedance), then the quotient is computed.
QuotientSummary tail_quotient_correlation(const FrechetScores& scores, double u);

// Rank-route quotient correlation, aggregated over seeded replicates
// (median by default, mean on request).
QuotientSummary rank_quotient(const PairedSample& sample, std::uint64_t seed, int replicates,
                              Aggregate aggregate = Aggregate::median);

// Rank-route tail quotient correlation: per replicate, censor the rank
// scores at the global unit Frechet threshold u = frechet_quantile(percentile)
// and compute q; aggregate across replicates.
QuotientSummary tail_quotient_rank(const PairedSample& sample, double percentile,
                                   std::uint64_t seed, int replicates,
                                   Aggregate aggregate = Aggregate::median);

}  // namespace qcorr
