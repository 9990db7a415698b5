#include "qcorr/marginals.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "qcorr/dist.hpp"
#include "qcorr/rng.hpp"

namespace qcorr {

std::vector<Eigen::Index> stable_ranks(const Eigen::Ref<const Eigen::ArrayXd>& values,
                                       bool* had_ties) {
  const Eigen::Index n = values.size();
  if (!values.isFinite().all())
    throw std::invalid_argument("stable_ranks: values must be finite");
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return values[a] < values[b] || (values[a] == values[b] && a < b);
  });
  if (had_ties) {
    *had_ties = false;
    for (Eigen::Index j = 1; j < n; ++j)
      if (values[order[j]] == values[order[j - 1]]) {
        *had_ties = true;
        break;
      }
  }
  std::vector<Eigen::Index> ranks(static_cast<std::size_t>(n));
  for (Eigen::Index j = 0; j < n; ++j) ranks[order[j]] = j;
  return ranks;
}

EmpiricalCdf::EmpiricalCdf(const Eigen::Ref<const Eigen::ArrayXd>& values) : sorted_(values) {
  if (sorted_.size() < 1) throw std::invalid_argument("EmpiricalCdf: empty sample");
  if (!sorted_.isFinite().all())
    throw std::invalid_argument("EmpiricalCdf: values must be finite");
  std::sort(sorted_.data(), sorted_.data() + sorted_.size());
}

double EmpiricalCdf::operator()(double x) const {
  const double* begin = sorted_.data();
  const double* end = begin + sorted_.size();
  const auto count = std::upper_bound(begin, end, x) - begin;
  return static_cast<double>(count) / (static_cast<double>(sorted_.size()) + 1.0);
}

Eigen::ArrayXd empirical_frechet_transform(const Eigen::Ref<const Eigen::ArrayXd>& sample,
                                           bool* had_ties) {
  const Eigen::Index n = sample.size();
  if (n < 2) throw std::invalid_argument("empirical_frechet_transform: need n >= 2");
  const auto ranks = stable_ranks(sample, had_ties);
  Eigen::ArrayXd scores(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double p = static_cast<double>(ranks[i] + 1) / (static_cast<double>(n) + 1.0);
    scores[i] = -1.0 / std::log(p);
  }
  return scores;
}

FrechetScores empirical_scores(const PairedSample& sample, bool* had_ties) {
  bool tx = false, ty = false;
  Eigen::ArrayXd sx = empirical_frechet_transform(sample.xs, &tx);
  Eigen::ArrayXd sy = empirical_frechet_transform(sample.ys, &ty);
  if (had_ties) *had_ties = tx || ty;
  return FrechetScores(std::move(sx), std::move(sy), Transform::empirical);
}

std::vector<FrechetScores> rank_frechet_scores(const PairedSample& sample, std::uint64_t seed,
                                               int replicates) {
  const Eigen::Index n = sample.n();
  if (replicates < 1) throw std::invalid_argument("rank_frechet_scores: replicates must be >= 1");
  const auto rank_x = stable_ranks(sample.xs);
  const auto rank_y = stable_ranks(sample.ys);

  std::vector<FrechetScores> out;
  out.reserve(static_cast<std::size_t>(replicates));
  for (int r = 0; r < replicates; ++r) {
    auto g = rng::stream(seed, static_cast<std::uint64_t>(r));
    Eigen::ArrayXd z(n);
    for (Eigen::Index i = 0; i < n; ++i) z[i] = rng::unit_frechet(g);
    std::sort(z.data(), z.data() + n);
    Eigen::ArrayXd sx(n), sy(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      sx[i] = z[rank_x[i]];
      sy[i] = z[rank_y[i]];
    }
    out.emplace_back(std::move(sx), std::move(sy), Transform::rank, r);
  }
  return out;
}

CdfDescriptor CdfDescriptor::frechet() { return {}; }

CdfDescriptor CdfDescriptor::normal(double mean, double sd) {
  if (!(sd > 0.0)) throw std::domain_error("CdfDescriptor::normal: sd must be positive");
  CdfDescriptor d;
  d.family = Family::normal;
  d.mean = mean;
  d.sd = sd;
  return d;
}

CdfDescriptor CdfDescriptor::student_t(double df) {
  if (!(df > 0.0)) throw std::domain_error("CdfDescriptor::student_t: df must be positive");
  CdfDescriptor d;
  d.family = Family::student_t;
  d.df = df;
  return d;
}

CdfDescriptor CdfDescriptor::uniform() {
  CdfDescriptor d;
  d.family = Family::uniform;
  return d;
}

CdfDescriptor CdfDescriptor::exponential(double rate) {
  if (!(rate > 0.0)) throw std::domain_error("CdfDescriptor::exponential: rate must be positive");
  CdfDescriptor d;
  d.family = Family::exponential;
  d.rate = rate;
  return d;
}

CdfDescriptor CdfDescriptor::estimated(Family family,
                                       const Eigen::Ref<const Eigen::ArrayXd>& sample) {
  switch (family) {
    case Family::normal: {
      const double m = sample.mean();
      const double var = (sample - m).square().sum() / (static_cast<double>(sample.size()) - 1.0);
      if (!(var > 0.0)) throw std::domain_error("CdfDescriptor::estimated: constant sample");
      return normal(m, std::sqrt(var));
    }
    case Family::exponential: {
      const double m = sample.mean();
      if (!(m > 0.0))
        throw std::domain_error("CdfDescriptor::estimated: exponential needs positive mean");
      return exponential(1.0 / m);
    }
    case Family::frechet:
      return frechet();
    case Family::uniform:
      return uniform();
    case Family::student_t:
      throw std::invalid_argument("CdfDescriptor::estimated: student_t df must be given");
  }
  throw std::invalid_argument("CdfDescriptor::estimated: unknown family");
}

CdfDescriptor::Family CdfDescriptor::parse_family(const std::string& name) {
  if (name == "frechet") return Family::frechet;
  if (name == "normal") return Family::normal;
  if (name == "t" || name == "student_t") return Family::student_t;
  if (name == "uniform") return Family::uniform;
  if (name == "exp" || name == "exponential") return Family::exponential;
  throw std::invalid_argument("unknown marginal family: " + name);
}

const char* CdfDescriptor::family_name() const {
  switch (family) {
    case Family::frechet: return "frechet";
    case Family::normal: return "normal";
    case Family::student_t: return "student_t";
    case Family::uniform: return "uniform";
    case Family::exponential: return "exponential";
  }
  return "?";
}

double CdfDescriptor::operator()(double v) const {
  switch (family) {
    case Family::frechet:
      return v > 0.0 ? std::exp(-1.0 / v) : 0.0;
    case Family::normal:
      return std_normal_cdf((v - mean) / sd);
    case Family::student_t:
      return student_t_cdf(v, df);
    case Family::uniform:
      return std::clamp(v, 0.0, 1.0);
    case Family::exponential:
      return v > 0.0 ? -std::expm1(-rate * v) : 0.0;
  }
  throw std::logic_error("CdfDescriptor: unknown family");
}

Eigen::ArrayXd parametric_frechet_transform(const Eigen::Ref<const Eigen::ArrayXd>& sample,
                                            const CdfDescriptor& cdf, bool* clamped) {
  const Eigen::Index n = sample.size();
  if (n < 1) throw std::invalid_argument("parametric_frechet_transform: empty sample");
  if (!sample.isFinite().all())
    throw std::invalid_argument("parametric_frechet_transform: values must be finite");
  const double lo = 1.0 / (4.0 * static_cast<double>(n));
  const double hi = 1.0 - lo;
  if (clamped) *clamped = false;
  Eigen::ArrayXd scores(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double p = cdf(sample[i]);
    if (p < lo || p > hi) {
      p = std::clamp(p, lo, hi);
      if (clamped) *clamped = true;
    }
    scores[i] = -1.0 / std::log(p);
  }
  return scores;
}

FrechetScores parametric_scores(const PairedSample& sample, const CdfDescriptor& cdf_x,
                                const CdfDescriptor& cdf_y, bool* clamped) {
  bool cx = false, cy = false;
  Eigen::ArrayXd sx = parametric_frechet_transform(sample.xs, cdf_x, &cx);
  Eigen::ArrayXd sy = parametric_frechet_transform(sample.ys, cdf_y, &cy);
  if (clamped) *clamped = cx || cy;
  return FrechetScores(std::move(sx), std::move(sy), Transform::parametric);
}

}  // namespace qcorr
