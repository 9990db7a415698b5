#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "qcorr/hypothesis.hpp"
#include "qcorr/marginals.hpp"
#include "qcorr/models.hpp"
#include "qcorr/quotient.hpp"
#include "qcorr/sample.hpp"

namespace qcorr {

// Sup-distance between the empirical CDF of the sample and a reference CDF,
// evaluated from both sides of each jump.
double ks_statistic(const Eigen::Ref<const Eigen::ArrayXd>& sample,
                    const std::function<double(double)>& cdf);

enum class Study { table1, power, nullcal, datatest };
enum class Route { rank, empirical, parametric };

Route parse_route(const std::string& name);
const char* route_name(Route r);
const char* study_name(Study s);
const char* aggregate_name(Aggregate a);

struct StudyConfig {
  Study study = Study::datatest;
  Eigen::Index n = 500;
  int reps = 100;
  double alpha = 0.05;
  std::vector<double> percentiles = {0.80, 0.825, 0.85, 0.875, 0.90, 0.925, 0.95, 0.975};
  std::vector<Model> models = {Model::a, Model::b, Model::c, Model::d,
                               Model::e, Model::f, Model::g, Model::h};
  std::uint64_t seed = 1;
  Route route = Route::rank;
  int replicates = 10;
  Aggregate aggregate = Aggregate::median;
  CdfDescriptor cdf_x;  // parametric route only
  CdfDescriptor cdf_y;
  // power study
  int n_min = 25;
  int n_max = 100;
  std::vector<int> power_ns;  // when nonempty, overrides [n_min, n_max]
};

// Full-sample gamma test, Fisher Z, and one tail gamma test per percentile
// on user-supplied data.
struct DataTestReport {
  StudyConfig config;
  GammaTestReport plain;
  FisherReport fisher;
  std::vector<GammaTestReport> tail;  // one per config.percentiles entry
  bool had_ties = false;

  std::string to_csv() const;
  std::string to_json() const;
};

DataTestReport run_data_test(const PairedSample& sample, const StudyConfig& config);

// Percentile x model grid of tail gamma tests over repeated samples;
// cells carry the median p-value, median statistic and rejection rate.
struct Table1Report {
  StudyConfig config;
  std::vector<double> percentiles;
  std::vector<Model> models;
  Eigen::ArrayXXd median_p;        // percentiles.size() x models.size()
  Eigen::ArrayXXd median_stat;
  Eigen::ArrayXXd rejection_rate;

  std::string to_csv() const;
  std::string to_json() const;
};

Table1Report run_table1(const StudyConfig& config);

// Empirical power of the rank-route gamma test and the Fisher Z test on the
// Y = X^2 design (X standard normal) over a range of sample sizes.
struct PowerReport {
  StudyConfig config;
  std::vector<int> ns;
  std::vector<double> gamma_power;
  std::vector<double> fisher_power;

  std::string to_csv() const;
  std::string to_json() const;
};

PowerReport run_power_study(const StudyConfig& config);

// Null-law calibration under independent unit Frechet pairs: the empirical
// law of the full-sample statistic against gamma(2,1), and of the tail
// statistic against gamma(2, 1-p) for each percentile p.
struct NullCalRow {
  std::string which;  // "plain" or "tail"
  std::optional<double> percentile;
  double rate = 1.0;
  double ks = 0.0;
  double type1_rate = 0.0;
  double mean_statistic = 0.0;
};

struct NullCalReport {
  StudyConfig config;
  std::vector<NullCalRow> rows;

  std::string to_csv() const;
  std::string to_json() const;
};

NullCalReport run_null_calibration(const StudyConfig& config);

}  // namespace qcorr
