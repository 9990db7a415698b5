#pragma once

#include <Eigen/Core>

namespace qcorr {

// A bivariate sample of n aligned observations; the universal input.
struct PairedSample {
  Eigen::ArrayXd xs;
  Eigen::ArrayXd ys;

  // Requires equal lengths, n >= 2 and all entries finite.
  PairedSample(Eigen::ArrayXd xs_in, Eigen::ArrayXd ys_in);

  Eigen::Index n() const { return xs.size(); }
};

enum class Transform { parametric, empirical, rank };

const char* transform_name(Transform t);

// Paired scores on the unit Frechet scale, with provenance of the transform.
// For the rank route, `rank_replicate` records the seeded substream index
// that produced the scores.
struct FrechetScores {
  Eigen::ArrayXd xs;
  Eigen::ArrayXd ys;
  Transform transform;
  int rank_replicate = 0;

  // Requires equal lengths and strictly positive finite entries.
  FrechetScores(Eigen::ArrayXd xs_in, Eigen::ArrayXd ys_in, Transform transform_in,
                int rank_replicate_in = 0);

  Eigen::Index n() const { return xs.size(); }
};

}  // namespace qcorr
