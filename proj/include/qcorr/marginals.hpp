#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "qcorr/sample.hpp"

namespace qcorr {

// 0-based ranks with ties broken by first occurrence (stable). Sets
// *had_ties when at least two values compare equal; margins are assumed
// absolutely continuous, so ties signal suspect data.
std::vector<Eigen::Index> stable_ranks(const Eigen::Ref<const Eigen::ArrayXd>& values,
                                       bool* had_ties = nullptr);

// Empirical CDF. Evaluation at a sample point with rank k yields k/(n+1),
// which stays strictly inside (0,1) so the Frechet map is finite.
class EmpiricalCdf {
 public:
  explicit EmpiricalCdf(const Eigen::Ref<const Eigen::ArrayXd>& values);

  // #{values <= x} / (n + 1)
  double operator()(double x) const;

  const Eigen::ArrayXd& sorted_values() const { return sorted_; }
  Eigen::Index n() const { return sorted_.size(); }

 private:
  Eigen::ArrayXd sorted_;
};

// Maps the value of rank k (1-based) to -1/log(k/(n+1)); output order
// matches input order.
Eigen::ArrayXd empirical_frechet_transform(const Eigen::Ref<const Eigen::ArrayXd>& sample,
                                           bool* had_ties = nullptr);

FrechetScores empirical_scores(const PairedSample& sample, bool* had_ties = nullptr);

// One FrechetScores per replicate r = 0..replicates-1. Replicate r draws n
// unit Frechet values from substream (seed, r), sorts them, and assigns the
// order statistic Z_(rank) within each margin; identical ranks in the two
// margins receive identical scores.
std::vector<FrechetScores> rank_frechet_scores(const PairedSample& sample, std::uint64_t seed,
                                               int replicates);

// Marginal CDF descriptor for the parametric route; parameters either fixed
// or moment-estimated from the sample.
struct CdfDescriptor {
  enum class Family { frechet, normal, student_t, uniform, exponential };

  Family family = Family::frechet;
  double mean = 0.0;
  double sd = 1.0;
  double df = 4.0;
  double rate = 1.0;

  static CdfDescriptor frechet();
  static CdfDescriptor normal(double mean, double sd);
  static CdfDescriptor student_t(double df);
  static CdfDescriptor uniform();
  static CdfDescriptor exponential(double rate);

  // Moment fit for normal (mean, sd) and exponential (1/mean); frechet and
  // uniform have nothing to fit; student_t needs an explicit df.
  static CdfDescriptor estimated(Family family, const Eigen::Ref<const Eigen::ArrayXd>& sample);

  static Family parse_family(const std::string& name);
  const char* family_name() const;

  double operator()(double v) const;
};

// v -> -1/log(G(v)), with G(v) clamped to [1/(4n), 1 - 1/(4n)] so scores stay
// finite; *clamped is set when the clamp was hit.
Eigen::ArrayXd parametric_frechet_transform(const Eigen::Ref<const Eigen::ArrayXd>& sample,
                                            const CdfDescriptor& cdf, bool* clamped = nullptr);

FrechetScores parametric_scores(const PairedSample& sample, const CdfDescriptor& cdf_x,
                                const CdfDescriptor& cdf_y, bool* clamped = nullptr);

}  // namespace qcorr
