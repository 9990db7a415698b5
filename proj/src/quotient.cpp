#include "qcorr/quotient.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "qcorr/dist.hpp"
#include "qcorr/marginals.hpp"

namespace qcorr {

const char* variant_name(Variant v) {
  switch (v) {
    case Variant::plain: return "plain";
    case Variant::rank: return "rank";
    case Variant::empirical: return "empirical";
    case Variant::tail: return "tail";
    case Variant::tail_rank: return "tail_rank";
  }
  return "?";
}

std::pair<double, double> max_quotient_pair(const Eigen::Ref<const Eigen::ArrayXd>& xs,
                                            const Eigen::Ref<const Eigen::ArrayXd>& ys) {
  if (xs.size() != ys.size())
    throw std::invalid_argument("max_quotient_pair: margins must have equal length");
  if (xs.size() < 1) throw std::invalid_argument("max_quotient_pair: empty input");
  if (!xs.isFinite().all() || !ys.isFinite().all() || (xs <= 0.0).any() || (ys <= 0.0).any())
    throw std::domain_error("max_quotient_pair: all entries must be positive");
  const double max_yx = (ys / xs).maxCoeff();
  const double max_xy = (xs / ys).maxCoeff();
  return {max_yx, max_xy};
}

double quotient_correlation(double max_yx, double max_xy) {
  if (!(max_yx >= 1.0) || !(max_xy >= 1.0))
    throw std::domain_error("quotient_correlation: max-quotients must be >= 1");
  if (max_yx == 1.0 && max_xy == 1.0) return 1.0;  // degenerate boundary
  const double q = (max_yx + max_xy - 2.0) / (max_yx * max_xy - 1.0);
  return std::clamp(q, 0.0, 1.0);
}

namespace {

QuotientSummary summarize(const Eigen::ArrayXd& xs, const Eigen::ArrayXd& ys, Variant variant,
                          std::optional<double> threshold) {
  auto [max_yx, max_xy] = max_quotient_pair(xs, ys);
  QuotientSummary s;
  s.max_yx = max_yx;
  s.max_xy = max_xy;
  s.q = quotient_correlation(max_yx, max_xy);
  s.n = xs.size();
  s.threshold = threshold;
  s.variant = variant;
  s.degenerate = (max_yx == 1.0 && max_xy == 1.0);
  return s;
}

double aggregate_of(std::vector<double>& v, Aggregate how) {
  if (how == Aggregate::mean) {
    double sum = 0.0;
    for (double x : v) sum += x;
    return sum / static_cast<double>(v.size());
  }
  const auto mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  double med = v[mid];
  if (v.size() % 2 == 0) {
    const double lo = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
    med = 0.5 * (lo + med);
  }
  return med;
}

QuotientSummary aggregate_replicates(const std::vector<QuotientSummary>& reps, Aggregate how,
                                     Variant variant, std::optional<double> threshold) {
  std::vector<double> qs, ayx, axy;
  qs.reserve(reps.size());
  ayx.reserve(reps.size());
  axy.reserve(reps.size());
  bool degenerate = true;
  for (const auto& r : reps) {
    qs.push_back(r.q);
    ayx.push_back(r.max_yx);
    axy.push_back(r.max_xy);
    degenerate = degenerate && r.degenerate;
  }
  QuotientSummary s;
  s.q = aggregate_of(qs, how);
  s.max_yx = aggregate_of(ayx, how);
  s.max_xy = aggregate_of(axy, how);
  s.n = reps.front().n;
  s.threshold = threshold;
  s.variant = variant;
  s.degenerate = degenerate;
  return s;
}

}  // namespace

QuotientSummary plain_quotient(const FrechetScores& scores) {
  Variant v = Variant::plain;
  if (scores.transform == Transform::empirical) v = Variant::empirical;
  if (scores.transform == Transform::rank) v = Variant::rank;
  return summarize(scores.xs, scores.ys, v, std::nullopt);
}

ThresholdSpec select_threshold(const FrechetScores& scores, double percentile) {
  if (!(percentile > 0.0) || !(percentile < 1.0))
    throw std::domain_error("select_threshold: percentile must lie in (0,1)");
  const Eigen::Index n = scores.n();
  if (n < 2) throw std::invalid_argument("select_threshold: need n >= 2");
  // Order statistic at ceil(p*n), 1-based; the 1e-9 guard absorbs cases
  // where p*n is an integer up to rounding.
  auto idx = static_cast<Eigen::Index>(
      std::ceil(percentile * static_cast<double>(n) - 1e-9));
  idx = std::clamp<Eigen::Index>(idx, 1, n);
  const auto kth = [idx, n](const Eigen::ArrayXd& v) {
    Eigen::ArrayXd tmp = v;
    std::nth_element(tmp.data(), tmp.data() + (idx - 1), tmp.data() + n);
    return tmp[idx - 1];
  };
  return {percentile, std::min(kth(scores.xs), kth(scores.ys))};
}

QuotientSummary tail_quotient_correlation(const FrechetScores& scores, double u) {
  if (!(u > 0.0) || !std::isfinite(u))
    throw std::domain_error("tail_quotient_correlation: threshold must be positive");
  // u + max(x - u, 0) == max(x, u): censored values at or below u sit at u.
  const Eigen::ArrayXd cx = scores.xs.max(u);
  const Eigen::ArrayXd cy = scores.ys.max(u);
  const Variant v = scores.transform == Transform::rank ? Variant::tail_rank : Variant::tail;
  return summarize(cx, cy, v, u);
}

QuotientSummary rank_quotient(const PairedSample& sample, std::uint64_t seed, int replicates,
                              Aggregate aggregate) {
  const auto scores = rank_frechet_scores(sample, seed, replicates);
  std::vector<QuotientSummary> reps;
  reps.reserve(scores.size());
  for (const auto& s : scores) reps.push_back(plain_quotient(s));
  return aggregate_replicates(reps, aggregate, Variant::rank, std::nullopt);
}

QuotientSummary tail_quotient_rank(const PairedSample& sample, double percentile,
                                   std::uint64_t seed, int replicates, Aggregate aggregate) {
  if (!(percentile > 0.0) || !(percentile < 1.0))
    throw std::domain_error("tail_quotient_rank: percentile must lie in (0,1)");
  const double u = frechet_quantile(percentile);
  const auto scores = rank_frechet_scores(sample, seed, replicates);
  std::vector<QuotientSummary> reps;
  reps.reserve(scores.size());
  for (const auto& s : scores) reps.push_back(tail_quotient_correlation(s, u));
  return aggregate_replicates(reps, aggregate, Variant::tail_rank, u);
}

}  // namespace qcorr
