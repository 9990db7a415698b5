#include <cmath>

#include <doctest.h>

#include "qcorr/dist.hpp"
#include "qcorr/hypothesis.hpp"
#include "qcorr/models.hpp"
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

TEST_CASE("gamma independence test") {
  const auto r = gamma_independence_test(2.0 / 3.0, 3, 0.05);
  CHECK(r.statistic == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(r.rate == 1.0);
  CHECK(r.p_value == doctest::Approx(3.0 * std::exp(-2.0)).epsilon(1e-12));
  CHECK_FALSE(r.reject);

  SUBCASE("zero coefficient retains with p = 1") {
    const auto z = gamma_independence_test(0.0, 100, 0.05);
    CHECK(z.p_value == 1.0);
    CHECK_FALSE(z.reject);
  }
  SUBCASE("statistic just above the cutoff rejects") {
    const auto rej = gamma_independence_test(4.80 / 100.0, 100, 0.05);
    CHECK(rej.statistic == doctest::Approx(4.80));
    CHECK(rej.reject);  // cutoff is about 4.744
    const auto ret = gamma_independence_test(4.70 / 100.0, 100, 0.05);
    CHECK_FALSE(ret.reject);
  }
  CHECK_THROWS_AS(gamma_independence_test(1.5, 10, 0.05), std::domain_error);
  CHECK_THROWS_AS(gamma_independence_test(0.5, 10, 0.0), std::domain_error);
}

TEST_CASE("gamma tail test") {
  SUBCASE("threshold at the 95th frechet percentile gives rate 0.05") {
    const double u = frechet_quantile(0.95);
    const auto r = gamma_tail_test(0.1, 100, u, 0.05);
    CHECK(r.rate == doctest::Approx(0.05).epsilon(1e-12));
  }
  SUBCASE("borderline statistic") {
    const auto r = gamma_tail_test(94.88 / 1000.0, 1000, frechet_quantile(0.95), 0.05);
    CHECK(r.statistic == doctest::Approx(94.88));
    CHECK(r.p_value == doctest::Approx(0.05).epsilon(1e-3));
  }
  SUBCASE("tiny threshold recovers the full-sample rate") {
    const auto r = gamma_tail_test(0.01, 100, 1e-9, 0.05);
    CHECK(r.rate == doctest::Approx(1.0));
    const auto plain = gamma_independence_test(0.01, 100, 0.05);
    CHECK(r.p_value == doctest::Approx(plain.p_value).epsilon(1e-9));
  }
  SUBCASE("degenerate summary reports statistic n and keeps the flag") {
    QuotientSummary s;
    s.q = 1.0;
    s.max_yx = s.max_xy = 1.0;
    s.n = 250;
    s.threshold = frechet_quantile(0.9);
    s.variant = Variant::tail;
    s.degenerate = true;
    const auto r = gamma_tail_test(s, 0.05, 0.9);
    CHECK(r.statistic == 250.0);
    CHECK(r.degenerate);
    CHECK(r.threshold_percentile == 0.9);
  }
  CHECK_THROWS_AS(gamma_tail_test(0.1, 100, 0.0, 0.05), std::domain_error);
}

TEST_CASE("decision consistency: reject iff p < alpha iff statistic above cutoff") {
  auto g = rng::stream(21, 0);
  for (int i = 0; i < 500; ++i) {
    const double q = rng::uniform01(g);
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(rng::uniform01(g) * 2000);
    const double alpha = 0.001 + 0.2 * rng::uniform01(g);
    const auto r = gamma_independence_test(q, n, alpha);
    CHECK(r.reject == (r.p_value < alpha));
    CHECK(r.reject == (r.statistic > erlang2_upper_quantile(alpha, r.rate)));

    const double u = frechet_quantile(0.5 + 0.49 * rng::uniform01(g));
    const auto t = gamma_tail_test(q, n, u, alpha);
    CHECK(t.reject == (t.p_value < alpha));
    CHECK(t.reject == (t.statistic > erlang2_upper_quantile(alpha, t.rate)));

    const double rho = 2.0 * rng::uniform01(g) - 1.0;
    const auto f = fisher_z_from_r(rho, 4 + (n % 100), alpha);
    CHECK(f.reject == (f.p_value < alpha));
  }
}

TEST_CASE("fisher z from r") {
  const auto r = fisher_z_from_r(0.5, 28, 0.05);
  CHECK(r.w == doctest::Approx(0.549306144334).epsilon(1e-10));
  CHECK(r.z == doctest::Approx(2.746530721670).epsilon(1e-10));
  CHECK(r.p_value == doctest::Approx(0.00602292).epsilon(1e-5));
  CHECK(r.reject);

  SUBCASE("r = 0 retains with p = 1") {
    const auto z = fisher_z_from_r(0.0, 100, 0.05);
    CHECK(z.z == 0.0);
    CHECK(z.p_value == 1.0);
    CHECK_FALSE(z.reject);
  }
  SUBCASE("degenerate correlation is overflow-safe") {
    const auto p1 = fisher_z_from_r(1.0, 10, 0.05);
    CHECK(p1.p_value == 0.0);
    CHECK(p1.reject);
    const auto m1 = fisher_z_from_r(-1.0, 10, 0.05);
    CHECK(m1.p_value == 0.0);
  }
  SUBCASE("one-sided alternatives") {
    const auto gt = fisher_z_from_r(0.5, 28, 0.05, Alternative::greater);
    CHECK(gt.p_value == doctest::Approx(0.00301146).epsilon(1e-4));
    const auto lt = fisher_z_from_r(0.5, 28, 0.05, Alternative::less);
    CHECK(lt.p_value == doctest::Approx(1.0 - 0.00301146).epsilon(1e-4));
  }
  CHECK_THROWS_AS(fisher_z_from_r(0.5, 3, 0.05), std::domain_error);
}

TEST_CASE("fisher z test on samples") {
  SUBCASE("hand-computed correlation") {
    const PairedSample s(arr({1.0, 2.0, 3.0, 4.0}), arr({1.0, 3.0, 2.0, 4.0}));
    // r = 0.8 for this configuration
    const auto rep = fisher_z_test(s, 0.05);
    CHECK(rep.r == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(rep.n == 4);
  }
  SUBCASE("orthogonal data gives z = 0") {
    const PairedSample s(arr({1.0, -1.0, 1.0, -1.0}), arr({1.0, 1.0, -1.0, -1.0}));
    const auto rep = fisher_z_test(s, 0.05);
    CHECK(rep.r == 0.0);
    CHECK(rep.p_value == 1.0);
  }
  SUBCASE("identical margins give r = 1 and p = 0") {
    const PairedSample s(arr({1.0, 2.0, 5.0, 9.0}), arr({1.0, 2.0, 5.0, 9.0}));
    const auto rep = fisher_z_test(s, 0.05);
    CHECK(rep.r == 1.0);
    CHECK(rep.p_value == 0.0);
  }
  CHECK_THROWS_AS(fisher_z_test(PairedSample(arr({2.0, 2.0, 2.0, 2.0}), arr({1.0, 2.0, 3.0, 4.0})), 0.05),
                  std::domain_error);
  CHECK_THROWS_AS(fisher_z_test(PairedSample(arr({1.0, 2.0}), arr({2.0, 1.0})), 0.05),
                  std::domain_error);
}

TEST_CASE("tail dependence index estimate") {
  SUBCASE("identical margins give lambda 1") {
    const FrechetScores s(arr({1.0, 5.0, 9.0}), arr({1.0, 5.0, 9.0}), Transform::parametric);
    const auto e = tail_index_estimate(s, 4.0);
    CHECK(e.lambda_hat == 1.0);
    CHECK(e.joint_count == 2);
    CHECK(e.marginal_count == 2);
  }
  SUBCASE("disjoint exceedance sets give lambda 0") {
    const FrechetScores s(arr({9.0, 1.0, 8.0}), arr({1.0, 9.0, 2.0}), Transform::parametric);
    CHECK(tail_index_estimate(s, 5.0).lambda_hat == 0.0);
  }
  SUBCASE("conditioning margin is selectable") {
    const FrechetScores s(arr({9.0, 8.0, 1.0}), arr({9.0, 1.0, 1.0}), Transform::parametric);
    CHECK(tail_index_estimate(s, 5.0).lambda_hat == 1.0);            // on y: 1/1
    CHECK(tail_index_estimate(s, 5.0, true).lambda_hat == 0.5);      // on x: 1/2
  }
  SUBCASE("no conditioning exceedances is an error") {
    const FrechetScores s(arr({9.0, 8.0}), arr({1.0, 2.0}), Transform::parametric);
    CHECK_THROWS_AS(tail_index_estimate(s, 5.0), std::domain_error);
  }
}

TEST_CASE("tail index of gumbel-copula data matches the logistic closed form") {
  // theta = 0.4472: lambda = 2 - 2^theta = 0.63656..., estimated at the
  // 0.999 marginal quantile from one million frechet-margin pairs.
  const double theta = 0.4472;
  const Eigen::Index n = 1000000;
  auto [u1, u2] = gumbel_copula_sample(theta, n, 777);
  const FrechetScores scores(-1.0 / u1.log(), -1.0 / u2.log(), Transform::parametric);
  const auto e = tail_index_estimate(scores, frechet_quantile(0.999));
  CHECK(e.lambda_hat == doctest::Approx(2.0 - std::pow(2.0, theta)).epsilon(0.08));
  CHECK(std::fabs(e.lambda_hat - 0.636) < 0.05);
}
