#include "qcorr/sample.hpp"

#include <stdexcept>
#include <utility>

namespace qcorr {

PairedSample::PairedSample(Eigen::ArrayXd xs_in, Eigen::ArrayXd ys_in)
    : xs(std::move(xs_in)), ys(std::move(ys_in)) {
  if (xs.size() != ys.size())
    throw std::invalid_argument("PairedSample: margins must have equal length");
  if (xs.size() < 2)
    throw std::invalid_argument("PairedSample: need at least 2 observations");
  if (!xs.isFinite().all() || !ys.isFinite().all())
    throw std::invalid_argument("PairedSample: all values must be finite");
}

const char* transform_name(Transform t) {
  switch (t) {
    case Transform::parametric: return "parametric";
    case Transform::empirical: return "empirical";
    case Transform::rank: return "rank";
  }
  return "?";
}

FrechetScores::FrechetScores(Eigen::ArrayXd xs_in, Eigen::ArrayXd ys_in,
                             Transform transform_in, int rank_replicate_in)
    : xs(std::move(xs_in)),
      ys(std::move(ys_in)),
      transform(transform_in),
      rank_replicate(rank_replicate_in) {
  if (xs.size() != ys.size())
    throw std::invalid_argument("FrechetScores: margins must have equal length");
  if (xs.size() < 1) throw std::invalid_argument("FrechetScores: empty scores");
  if (!xs.isFinite().all() || !ys.isFinite().all() || (xs <= 0.0).any() || (ys <= 0.0).any())
    throw std::invalid_argument("FrechetScores: scores must be positive and finite");
}

}  // namespace qcorr
