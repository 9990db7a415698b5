#include <cmath>
#include <vector>

#include <doctest.h>

#include "qcorr/dist.hpp"
#include "qcorr/marginals.hpp"
#include "qcorr/models.hpp"
#include "qcorr/quotient.hpp"
#include "qcorr/rng.hpp"

using namespace qcorr;

namespace {

Eigen::ArrayXd arr(std::initializer_list<double> v) {
  Eigen::ArrayXd a(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) a[i++] = x;
  return a;
}

}  // namespace

TEST_CASE("max quotient pair") {
  const auto [yx, xy] = max_quotient_pair(arr({1.0, 2.0, 4.0}), arr({2.0, 1.0, 4.0}));
  CHECK(yx == doctest::Approx(2.0));
  CHECK(xy == doctest::Approx(2.0));

  SUBCASE("identical sequences give (1,1)") {
    const auto [a, b] = max_quotient_pair(arr({3.0, 7.0}), arr({3.0, 7.0}));
    CHECK(a == 1.0);
    CHECK(b == 1.0);
  }
  SUBCASE("scaling one margin scales the quotients") {
    const auto xs = arr({1.0, 2.0, 4.0});
    const auto ys = arr({2.0, 1.0, 4.0});
    const auto [yx0, xy0] = max_quotient_pair(xs, ys);
    const auto [yx1, xy1] = max_quotient_pair(xs, Eigen::ArrayXd(3.0 * ys));
    CHECK(yx1 == doctest::Approx(3.0 * yx0));
    CHECK(xy1 == doctest::Approx(xy0 / 3.0));
  }
  CHECK_THROWS_AS(max_quotient_pair(arr({1.0, 0.0}), arr({1.0, 1.0})), std::domain_error);
  CHECK_THROWS_AS(max_quotient_pair(arr({1.0, -2.0}), arr({1.0, 1.0})), std::domain_error);
}

TEST_CASE("quotient correlation coefficient") {
  CHECK(quotient_correlation(2.0, 2.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(quotient_correlation(3.0, 3.0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(quotient_correlation(1.0, 7.5) == 1.0);
  CHECK(quotient_correlation(7.5, 1.0) == 1.0);
  CHECK(quotient_correlation(1.0, 1.0) == 1.0);  // degenerate boundary
  CHECK_THROWS_AS(quotient_correlation(0.9, 2.0), std::domain_error);

  SUBCASE("monotone decreasing in each argument above the boundary") {
    double prev = 1.0;
    for (double x = 1.1; x < 8.0; x += 0.3) {
      const double q = quotient_correlation(x, 2.5);
      CHECK(q < prev);
      prev = q;
    }
  }
  SUBCASE("stays in [0,1] on a grid") {
    for (double x = 1.0; x < 50.0; x += 1.7)
      for (double y = 1.0; y < 50.0; y += 1.7) {
        const double q = quotient_correlation(x, y);
        CHECK(q >= 0.0);
        CHECK(q <= 1.0);
      }
  }
}

TEST_CASE("plain quotient variant follows the transform") {
  const PairedSample sample(arr({1.0, 3.0, 2.0}), arr({2.0, 1.0, 3.0}));
  const auto s = plain_quotient(empirical_scores(sample));
  CHECK(s.variant == Variant::empirical);
  CHECK(s.n == 3);
  CHECK_FALSE(s.threshold.has_value());
}

TEST_CASE("threshold selection") {
  Eigen::ArrayXd xs(10), ys(10);
  for (int i = 0; i < 10; ++i) {
    xs[i] = i + 1.0;
    ys[i] = 2.0 * (i + 1.0);
  }
  const FrechetScores scores(xs, ys, Transform::parametric);
  const auto t = select_threshold(scores, 0.8);
  CHECK(t.resolved_u == doctest::Approx(8.0));
  CHECK(t.percentile == 0.8);

  SUBCASE("identical margins") {
    const FrechetScores same(xs, xs, Transform::parametric);
    CHECK(select_threshold(same, 0.8).resolved_u == doctest::Approx(8.0));
  }
  SUBCASE("percentile near one picks the smaller maximum") {
    CHECK(select_threshold(scores, 0.999).resolved_u == doctest::Approx(10.0));
  }
  CHECK_THROWS_AS(select_threshold(scores, 0.0), std::domain_error);
  CHECK_THROWS_AS(select_threshold(scores, 1.0), std::domain_error);
}

TEST_CASE("tail quotient correlation") {
  const FrechetScores scores(arr({10.0, 3.0}), arr({6.0, 8.0}), Transform::parametric);
  const auto s = tail_quotient_correlation(scores, 5.0);
  CHECK(s.max_xy == doctest::Approx(10.0 / 6.0).epsilon(1e-12));
  CHECK(s.max_yx == doctest::Approx(8.0 / 5.0).epsilon(1e-12));
  CHECK(s.q == doctest::Approx(0.76).epsilon(1e-12));
  CHECK(s.threshold == 5.0);
  CHECK(s.variant == Variant::tail);
  CHECK_FALSE(s.degenerate);

  SUBCASE("fully censored sample is degenerate with q = 1") {
    const FrechetScores low(arr({1.0, 2.0}), arr({0.5, 1.5}), Transform::parametric);
    const auto d = tail_quotient_correlation(low, 10.0);
    CHECK(d.q == 1.0);
    CHECK(d.degenerate);
  }
  SUBCASE("u below every score recovers the plain quotient") {
    const auto plain = plain_quotient(scores);
    const auto t = tail_quotient_correlation(scores, 1e-9);
    CHECK(t.q == doctest::Approx(plain.q).epsilon(1e-14));
  }
  SUBCASE("censoring monotonicity: q nondecreasing, maxima nonincreasing in u") {
    auto g = rng::stream(5, 0);
    Eigen::ArrayXd xs(200), ys(200);
    for (Eigen::Index i = 0; i < 200; ++i) {
      xs[i] = rng::unit_frechet(g);
      ys[i] = rng::unit_frechet(g);
    }
    const FrechetScores sc(xs, ys, Transform::parametric);
    double prev_q = 0.0, prev_yx = 1e300, prev_xy = 1e300;
    for (double p = 0.5; p < 0.995; p += 0.05) {
      const auto t = tail_quotient_correlation(sc, frechet_quantile(p));
      CHECK(t.q >= prev_q);
      CHECK(t.max_yx <= prev_yx);
      CHECK(t.max_xy <= prev_xy);
      prev_q = t.q;
      prev_yx = t.max_yx;
      prev_xy = t.max_xy;
    }
  }
  CHECK_THROWS_AS(tail_quotient_correlation(scores, 0.0), std::domain_error);
}

TEST_CASE("plain quotient on rank/empirical scores is invariant under increasing maps") {
  auto g = rng::stream(17, 0);
  Eigen::ArrayXd xs(300), ys(300);
  for (Eigen::Index i = 0; i < 300; ++i) {
    xs[i] = rng::normal_pair(g).first;
    ys[i] = rng::normal_pair(g).second;
  }
  const PairedSample raw(xs, ys);
  const PairedSample mapped(xs.exp(), Eigen::ArrayXd(ys * ys * ys + 2.0 * ys));

  CHECK(plain_quotient(empirical_scores(raw)).q ==
        doctest::Approx(plain_quotient(empirical_scores(mapped)).q).epsilon(1e-14));
  CHECK(rank_quotient(raw, 99, 5).q == doctest::Approx(rank_quotient(mapped, 99, 5).q));
}

TEST_CASE("rank-route tail quotient") {
  SUBCASE("identical rank vectors give q = 1 in every replicate") {
    const PairedSample sample(arr({1.0, 4.0, 2.0, 8.0}), arr({3.0, 9.0, 5.0, 11.0}));
    const auto s = tail_quotient_rank(sample, 0.9, 12, 7);
    CHECK(s.q == 1.0);
    CHECK(s.degenerate);
    CHECK(s.variant == Variant::tail_rank);
  }
  SUBCASE("tiny percentile recovers the plain rank quotient") {
    const PairedSample sample(arr({1.0, 4.0, 2.0, 8.0}), arr({9.0, 3.0, 5.0, 2.0}));
    const auto tail = tail_quotient_rank(sample, 1e-6, 31, 4);
    const auto plain = rank_quotient(sample, 31, 4);
    CHECK(tail.q == doctest::Approx(plain.q).epsilon(1e-12));
  }
  SUBCASE("median and mean aggregation differ in general") {
    auto g = rng::stream(8, 0);
    Eigen::ArrayXd xs(100), ys(100);
    for (Eigen::Index i = 0; i < 100; ++i) {
      xs[i] = rng::unit_frechet(g);
      ys[i] = rng::unit_frechet(g);
    }
    const PairedSample sample(xs, ys);
    const auto med = rank_quotient(sample, 5, 10, Aggregate::median);
    const auto avg = rank_quotient(sample, 5, 10, Aggregate::mean);
    CHECK(med.q != avg.q);
  }
}

TEST_CASE("tail-rank null behaviour on independent frechet data") {
  // n = 500, percentile 0.95: the statistic should fall below the gamma
  // cutoff in at least 80% of trials.
  const double u = frechet_quantile(0.95);
  const double cutoff = GammaRef(1.0 - 0.95).upper_quantile(0.05);
  int below = 0;
  const int trials = 100;
  for (int t = 0; t < trials; ++t) {
    ModelSpec spec;
    spec.model = Model::a;
    spec.n = 500;
    spec.seed = rng::derive(424242, static_cast<std::uint64_t>(t));
    const auto sample = generate(spec);
    const auto s = tail_quotient_rank(sample, 0.95, rng::derive(spec.seed, 77), 10);
    if (500.0 * s.q < cutoff) ++below;
  }
  CHECK(below >= 80);
  (void)u;
}

TEST_CASE("necessary-condition diagnostic: median plain q decreases toward 0 with n") {
  const int trials = 50;
  std::vector<double> medians;
  for (const Eigen::Index n : {100, 1000, 10000}) {
    std::vector<double> qs;
    for (int t = 0; t < trials; ++t) {
      ModelSpec spec;
      spec.model = Model::a;
      spec.n = n;
      spec.seed = rng::derive(31337 + static_cast<std::uint64_t>(n),
                              static_cast<std::uint64_t>(t));
      const auto sample = generate(spec);
      const FrechetScores scores(sample.xs, sample.ys, Transform::parametric);
      qs.push_back(plain_quotient(scores).q);
    }
    std::sort(qs.begin(), qs.end());
    medians.push_back(0.5 * (qs[24] + qs[25]));
  }
  CHECK(medians[1] < medians[0]);
  CHECK(medians[2] < medians[1]);
  CHECK(medians[2] < 0.005);
}
