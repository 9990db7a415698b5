#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include <Eigen/Core>

#include "qcorr/sample.hpp"

namespace qcorr {

// The eight simulation models plus the explicit-coefficient max-of-scaled-
// Frechet construction:
//   a  independent unit Frechet margins
//   b  Gumbel copula, unit Frechet margins
//   c  survival Gumbel copula, unit Frechet margins
//   d  max-of-scaled-Frechet pair with 30 simulated coefficients
//   e  (1/U, 1/(1-U)) for U uniform
//   f  bivariate normal with correlation rho
//   g  X = Z1*E, Y = Z2*E with Z unit Frechet and a shared unit exponential
//   h  bivariate Student t with correlation rho
//   m4 max-of-scaled-Frechet pair with explicit coefficients
enum class Model { a, b, c, d, e, f, g, h, m4 };

Model parse_model(const std::string& name);
const char* model_name(Model m);

struct ModelSpec {
  Model model = Model::a;
  Eigen::Index n = 500;
  std::uint64_t seed = 0;
  std::optional<double> theta;  // b, c: copula parameter in (0,1]
  std::optional<double> rho;    // f, h: correlation in (-1,1)
  std::optional<int> df;        // h: degrees of freedom
  std::optional<Eigen::ArrayX2d> m4_coeffs;  // m4: positive, columns sum to 1
};

// n iid pairs from the named model; bit-reproducible from the seed.
// Missing required parameters raise std::invalid_argument.
PairedSample generate(const ModelSpec& spec);

// n pairs with uniform margins and the Gumbel (logistic) copula
//   C(u1,u2) = exp(-[(-log u1)^(1/theta) + (-log u2)^(1/theta)]^theta),
// sampled by the positive-stable frailty construction. theta = 1 is the
// independence copula.
std::pair<Eigen::ArrayXd, Eigen::ArrayXd> gumbel_copula_sample(double theta, Eigen::Index n,
                                                               std::uint64_t seed);

// Almost-sure limits of the max-of-scaled-Frechet pair:
// c1 bounds x/y, c2 bounds y/x, and q converges to f(c1, c2).
struct M4Limit {
  double c1;
  double c2;
  double q_limit;
};

M4Limit m4_limit(const Eigen::ArrayX2d& coeffs);

// Each pair takes componentwise maxima of one fresh vector of L scaled unit
// Frechet draws. Columns of coeffs must be positive and sum to 1.
std::pair<PairedSample, M4Limit> m4_pair(const Eigen::ArrayX2d& coeffs, Eigen::Index n,
                                         std::uint64_t seed);

// L rows of positive coefficients, each column normalized to sum 1.
Eigen::ArrayX2d simulate_m4_coefficients(Eigen::Index L, std::uint64_t seed);

}  // namespace qcorr
