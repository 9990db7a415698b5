#include <cmath>

#include <doctest.h>
#include <json.hpp>

#include "qcorr/dist.hpp"
#include "qcorr/rng.hpp"
#include "qcorr/studies.hpp"

using namespace qcorr;

TEST_CASE("ks statistic") {
  SUBCASE("single point at the reference median") {
    Eigen::ArrayXd one(1);
    one << 0.5;
    CHECK(ks_statistic(one, [](double x) { return std::clamp(x, 0.0, 1.0); }) ==
          doctest::Approx(0.5));
  }
  SUBCASE("quantiles at (i - 0.5)/n reach the staircase bound") {
    const int n = 40;
    Eigen::ArrayXd v(n);
    for (int i = 1; i <= n; ++i) v[i - 1] = (i - 0.5) / n;
    CHECK(ks_statistic(v, [](double x) { return std::clamp(x, 0.0, 1.0); }) ==
          doctest::Approx(0.5 / n).epsilon(1e-12));
  }
  SUBCASE("uniform draws stay under 0.01 at n = 1e5") {
    auto g = rng::stream(2, 0);
    Eigen::ArrayXd v(100000);
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = rng::uniform01(g);
    CHECK(ks_statistic(v, [](double x) { return std::clamp(x, 0.0, 1.0); }) < 0.01);
  }
  SUBCASE("empty sample rejected") {
    CHECK_THROWS(ks_statistic(Eigen::ArrayXd(0), [](double) { return 0.5; }));
  }
}

TEST_CASE("data test report") {
  StudyConfig config;
  config.seed = 404;
  config.alpha = 0.05;
  config.route = Route::rank;
  config.replicates = 5;
  config.percentiles = {0.8, 0.9, 0.95};

  SUBCASE("identical columns reject everywhere") {
    Eigen::ArrayXd v(200);
    auto g = rng::stream(6, 0);
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = rng::unit_frechet(g);
    const PairedSample sample(v, v);
    const auto report = run_data_test(sample, config);
    CHECK(report.plain.statistic == doctest::Approx(200.0));  // q = 1
    CHECK(report.plain.reject);
    CHECK(report.tail.size() == 3);
    for (const auto& t : report.tail) {
      CHECK(t.statistic == doctest::Approx(200.0));
      CHECK(t.reject);
      CHECK(t.degenerate);
    }
    CHECK(report.fisher.reject);
  }
  SUBCASE("csv and json forms carry provenance and rows") {
    ModelSpec spec;
    spec.model = Model::a;
    spec.n = 150;
    spec.seed = 2;
    const auto sample = generate(spec);
    const auto report = run_data_test(sample, config);
    const std::string csv = report.to_csv();
    CHECK(csv.find("# qcorr") != std::string::npos);
    CHECK(csv.find("seed=404") != std::string::npos);
    CHECK(csv.find("route=rank") != std::string::npos);
    CHECK(csv.find("gamma,") != std::string::npos);
    CHECK(csv.find("fisher_z,") != std::string::npos);
    CHECK(csv.find("tail_gamma,0.8") != std::string::npos);

    const auto j = nlohmann::json::parse(report.to_json());
    CHECK(j["config"]["seed"] == 404);
    CHECK(j["tail"].size() == 3);
    CHECK(j["plain"]["variant"] == "rank");
    CHECK(j["version"] == "0.1.0");
  }
  SUBCASE("deterministic for a fixed config") {
    ModelSpec spec;
    spec.model = Model::b;
    spec.n = 120;
    spec.seed = 9;
    spec.theta = 0.4472;
    const auto sample = generate(spec);
    CHECK(run_data_test(sample, config).to_csv() == run_data_test(sample, config).to_csv());
  }
  SUBCASE("percentiles are validated and sorted ascending") {
    ModelSpec spec;
    spec.model = Model::a;
    spec.n = 100;
    spec.seed = 4;
    const auto sample = generate(spec);
    config.percentiles = {0.95, 0.8, 0.9};
    const auto report = run_data_test(sample, config);
    CHECK(report.tail[0].threshold_percentile == 0.8);
    CHECK(report.tail[2].threshold_percentile == 0.95);
    config.percentiles = {0.5, 1.5};
    CHECK_THROWS_AS(run_data_test(sample, config), std::invalid_argument);
  }
  SUBCASE("tail statistic is monotone along the percentile grid for fixed data") {
    ModelSpec spec;
    spec.model = Model::a;
    spec.n = 300;
    spec.seed = 12;
    const auto sample = generate(spec);
    for (Route route : {Route::rank, Route::empirical}) {
      config.route = route;
      const auto report = run_data_test(sample, config);
      for (std::size_t i = 1; i < report.tail.size(); ++i) {
        CHECK(report.tail[i].statistic >= report.tail[i - 1].statistic);
        // the cutoff grows as the rate shrinks
        CHECK(erlang2_upper_quantile(config.alpha, report.tail[i].rate) >=
              erlang2_upper_quantile(config.alpha, report.tail[i - 1].rate));
      }
    }
  }
}

TEST_CASE("table1 report structure") {
  StudyConfig config;
  config.study = Study::table1;
  config.n = 80;
  config.reps = 3;
  config.seed = 5;
  config.route = Route::empirical;
  const auto report = run_table1(config);
  CHECK(report.percentiles.size() == 8);
  CHECK(report.models.size() == 8);
  CHECK(report.median_p.rows() == 8);
  CHECK(report.median_p.cols() == 8);
  CHECK((report.rejection_rate >= 0.0).all());
  CHECK((report.rejection_rate <= 1.0).all());

  const std::string csv = report.to_csv();
  CHECK(csv.find("percentile,a,b,c,d,e,f,g,h,a_reject_rate") != std::string::npos);
  // 8 data rows after the two provenance lines and the header
  int rows = 0;
  for (char c : csv)
    if (c == '\n') ++rows;
  CHECK(rows == 2 + 1 + 8);

  SUBCASE("bit-reproducible") {
    CHECK(run_table1(config).to_csv() == csv);
  }
  SUBCASE("json shape") {
    const auto j = nlohmann::json::parse(report.to_json());
    CHECK(j["median_p"].size() == 8);
    CHECK(j["median_p"][0].size() == 8);
    CHECK(j["models"][3] == "d");
  }
}

TEST_CASE("power study report") {
  StudyConfig config;
  config.study = Study::power;
  config.reps = 20;
  config.seed = 31;
  config.replicates = 5;
  config.power_ns = {25, 60};
  const auto report = run_power_study(config);
  CHECK(report.ns == std::vector<int>{25, 60});
  CHECK(report.gamma_power.size() == 2);
  for (double p : report.gamma_power) {
    CHECK(p >= 0.0);
    CHECK(p <= 1.0);
  }
  const std::string csv = report.to_csv();
  CHECK(csv.find("n,gamma_power,fisher_power") != std::string::npos);
  CHECK(run_power_study(config).to_csv() == csv);

  SUBCASE("full range when no explicit sizes are given") {
    config.power_ns.clear();
    config.n_min = 10;
    config.n_max = 12;
    config.reps = 2;
    const auto r = run_power_study(config);
    CHECK(r.ns == std::vector<int>{10, 11, 12});
  }
}

TEST_CASE("null calibration smoke run") {
  StudyConfig config;
  config.study = Study::nullcal;
  config.n = 200;
  config.reps = 60;
  config.seed = 77;
  config.route = Route::parametric;
  config.percentiles = {0.9};
  const auto report = run_null_calibration(config);
  CHECK(report.rows.size() == 2);
  CHECK(report.rows[0].which == "plain");
  CHECK(report.rows[0].rate == 1.0);
  CHECK(report.rows[1].rate == doctest::Approx(0.1));
  // loose sanity bounds at a small trial count
  CHECK(report.rows[0].ks < 0.25);
  CHECK(report.rows[0].type1_rate < 0.25);
  const std::string csv = report.to_csv();
  CHECK(csv.find("which,percentile,rate,ks,type1_rate,mean_statistic") != std::string::npos);
}
