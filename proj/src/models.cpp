#include "qcorr/models.hpp"

#include <cmath>
#include <stdexcept>

#include "qcorr/quotient.hpp"
#include "qcorr/rng.hpp"

namespace qcorr {

namespace {

// Fixed substream tags so adding a model never shifts another model's draws.
constexpr std::uint64_t kDataStream = 1;
constexpr std::uint64_t kCoeffStream = 2;

double require(const std::optional<double>& v, const char* what) {
  if (!v) throw std::invalid_argument(std::string("generate: missing parameter ") + what);
  return *v;
}

double chi_squared(int df, std::mt19937_64& g) {
  double sum = 0.0;
  int k = df;
  for (; k >= 2; k -= 2) sum += 2.0 * rng::unit_exponential(g);
  if (k == 1) {
    const double z = rng::normal_pair(g).first;
    sum += z * z;
  }
  return sum;
}

}  // namespace

Model parse_model(const std::string& name) {
  if (name.size() == 1 && name[0] >= 'a' && name[0] <= 'h')
    return static_cast<Model>(name[0] - 'a');
  if (name == "m4") return Model::m4;
  throw std::invalid_argument("unknown model: " + name);
}

const char* model_name(Model m) {
  switch (m) {
    case Model::a: return "a";
    case Model::b: return "b";
    case Model::c: return "c";
    case Model::d: return "d";
    case Model::e: return "e";
    case Model::f: return "f";
    case Model::g: return "g";
    case Model::h: return "h";
    case Model::m4: return "m4";
  }
  return "?";
}

std::pair<Eigen::ArrayXd, Eigen::ArrayXd> gumbel_copula_sample(double theta, Eigen::Index n,
                                                               std::uint64_t seed) {
  if (!(theta > 0.0) || !(theta <= 1.0))
    throw std::domain_error("gumbel_copula_sample: theta must lie in (0,1]");
  if (n < 1) throw std::invalid_argument("gumbel_copula_sample: n must be positive");
  auto g = rng::stream(seed, kDataStream);
  Eigen::ArrayXd u1(n), u2(n);
  if (theta == 1.0) {
    for (Eigen::Index i = 0; i < n; ++i) {
      u1[i] = rng::uniform01(g);
      u2[i] = rng::uniform01(g);
    }
    return {std::move(u1), std::move(u2)};
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    const double s = rng::positive_stable(theta, g);
    const double e1 = rng::unit_exponential(g);
    const double e2 = rng::unit_exponential(g);
    u1[i] = std::exp(-std::pow(e1 / s, theta));
    u2[i] = std::exp(-std::pow(e2 / s, theta));
  }
  return {std::move(u1), std::move(u2)};
}

M4Limit m4_limit(const Eigen::ArrayX2d& coeffs) {
  const double c1 = (coeffs.col(0) / coeffs.col(1)).maxCoeff();
  const double c2 = (coeffs.col(1) / coeffs.col(0)).maxCoeff();
  return {c1, c2, quotient_correlation(c1, c2)};
}

std::pair<PairedSample, M4Limit> m4_pair(const Eigen::ArrayX2d& coeffs, Eigen::Index n,
                                         std::uint64_t seed) {
  const Eigen::Index L = coeffs.rows();
  if (L < 1) throw std::invalid_argument("m4_pair: need at least one coefficient row");
  if ((coeffs <= 0.0).any()) throw std::invalid_argument("m4_pair: coefficients must be positive");
  for (int c = 0; c < 2; ++c)
    if (std::fabs(coeffs.col(c).sum() - 1.0) > 1e-9)
      throw std::invalid_argument("m4_pair: coefficient columns must sum to 1");

  auto g = rng::stream(seed, kDataStream);
  Eigen::ArrayXd xs(n), ys(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double x = 0.0, y = 0.0;
    for (Eigen::Index l = 0; l < L; ++l) {
      const double z = rng::unit_frechet(g);
      x = std::max(x, coeffs(l, 0) * z);
      y = std::max(y, coeffs(l, 1) * z);
    }
    xs[i] = x;
    ys[i] = y;
  }
  return {PairedSample(std::move(xs), std::move(ys)), m4_limit(coeffs)};
}

Eigen::ArrayX2d simulate_m4_coefficients(Eigen::Index L, std::uint64_t seed) {
  auto g = rng::stream(seed, kCoeffStream);
  Eigen::ArrayX2d coeffs(L, 2);
  for (int c = 0; c < 2; ++c) {
    for (Eigen::Index l = 0; l < L; ++l) coeffs(l, c) = rng::uniform01(g);
    coeffs.col(c) /= coeffs.col(c).sum();
  }
  return coeffs;
}

PairedSample generate(const ModelSpec& spec) {
  const Eigen::Index n = spec.n;
  if (n < 2) throw std::invalid_argument("generate: n must be >= 2");
  auto g = rng::stream(spec.seed, kDataStream);

  switch (spec.model) {
    case Model::a: {
      Eigen::ArrayXd xs(n), ys(n);
      for (Eigen::Index i = 0; i < n; ++i) {
        xs[i] = rng::unit_frechet(g);
        ys[i] = rng::unit_frechet(g);
      }
      return {std::move(xs), std::move(ys)};
    }
    case Model::b: {
      const double theta = require(spec.theta, "theta");
      auto [u1, u2] = gumbel_copula_sample(theta, n, spec.seed);
      return {-1.0 / u1.log(), -1.0 / u2.log()};
    }
    case Model::c: {
      // Joint survival equals the Gumbel copula of the marginal survivals,
      // so the copula draws act as survival probabilities.
      const double theta = require(spec.theta, "theta");
      auto [v1, v2] = gumbel_copula_sample(theta, n, spec.seed);
      Eigen::ArrayXd xs(n), ys(n);
      for (Eigen::Index i = 0; i < n; ++i) {
        xs[i] = -1.0 / std::log1p(-v1[i]);
        ys[i] = -1.0 / std::log1p(-v2[i]);
      }
      return {std::move(xs), std::move(ys)};
    }
    case Model::d: {
      const auto coeffs = simulate_m4_coefficients(30, spec.seed);
      return m4_pair(coeffs, n, spec.seed).first;
    }
    case Model::e: {
      Eigen::ArrayXd xs(n), ys(n);
      for (Eigen::Index i = 0; i < n; ++i) {
        const double u = rng::uniform01(g);
        xs[i] = 1.0 / u;
        ys[i] = 1.0 / (1.0 - u);
      }
      return {std::move(xs), std::move(ys)};
    }
    case Model::f: {
      const double rho = require(spec.rho, "rho");
      if (!(rho > -1.0) || !(rho < 1.0))
        throw std::domain_error("generate: rho must lie in (-1,1)");
      const double s = std::sqrt(1.0 - rho * rho);
      Eigen::ArrayXd xs(n), ys(n);
      for (Eigen::Index i = 0; i < n; ++i) {
        const auto [z1, z2] = rng::normal_pair(g);
        xs[i] = z1;
        ys[i] = rho * z1 + s * z2;
      }
      return {std::move(xs), std::move(ys)};
    }
    case Model::g: {
      Eigen::ArrayXd xs(n), ys(n);
      for (Eigen::Index i = 0; i < n; ++i) {
        const double z1 = rng::unit_frechet(g);
        const double z2 = rng::unit_frechet(g);
        const double e = rng::unit_exponential(g);
        xs[i] = z1 * e;
        ys[i] = z2 * e;
      }
      return {std::move(xs), std::move(ys)};
    }
    case Model::h: {
      const double rho = require(spec.rho, "rho");
      if (!(rho > -1.0) || !(rho < 1.0))
        throw std::domain_error("generate: rho must lie in (-1,1)");
      if (!spec.df) throw std::invalid_argument("generate: missing parameter df");
      const int df = *spec.df;
      if (df < 1) throw std::domain_error("generate: df must be >= 1");
      const double s = std::sqrt(1.0 - rho * rho);
      Eigen::ArrayXd xs(n), ys(n);
      for (Eigen::Index i = 0; i < n; ++i) {
        const auto [z1, z2] = rng::normal_pair(g);
        const double w = std::sqrt(chi_squared(df, g) / static_cast<double>(df));
        xs[i] = z1 / w;
        ys[i] = (rho * z1 + s * z2) / w;
      }
      return {std::move(xs), std::move(ys)};
    }
    case Model::m4: {
      if (!spec.m4_coeffs) throw std::invalid_argument("generate: missing parameter m4_coeffs");
      return m4_pair(*spec.m4_coeffs, n, spec.seed).first;
    }
  }
  throw std::logic_error("generate: unknown model");
}

}  // namespace qcorr
