#include "qcorr/studies.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "qcorr/dist.hpp"
#include "qcorr/rng.hpp"
#include "qcorr/version.hpp"

namespace qcorr {

using nlohmann::json;

namespace {

constexpr std::uint64_t kRankTag = 0x72616e6b;    // rank-replicate substreams
constexpr std::uint64_t kModelTag = 0x6d6f64;     // per-model substreams
constexpr std::uint64_t kPowerTag = 0x706f77;     // per-sample-size substreams

double median_of(std::vector<double> v) {
  const auto mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  double med = v[mid];
  if (v.size() % 2 == 0)
    med = 0.5 * (med + *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid)));
  return med;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

// StudyConfig invariant: percentiles lie in (0,1), sorted ascending.
std::vector<double> normalized_percentiles(const std::vector<double>& percentiles) {
  std::vector<double> out = percentiles;
  for (double p : out)
    if (!(p > 0.0) || !(p < 1.0))
      throw std::invalid_argument("StudyConfig: percentiles must lie in (0,1)");
  std::sort(out.begin(), out.end());
  return out;
}

ModelSpec spec_with_defaults(Model m, Eigen::Index n, std::uint64_t seed) {
  ModelSpec spec;
  spec.model = m;
  spec.n = n;
  spec.seed = seed;
  if (m == Model::b || m == Model::c) spec.theta = 0.4472;
  if (m == Model::f || m == Model::h) spec.rho = 0.8;
  if (m == Model::h) spec.df = 4;
  if (m == Model::d || m == Model::m4) {
    // table-style studies treat m4 as model (d)
    spec.model = Model::d;
  }
  return spec;
}

json config_to_json(const StudyConfig& c) {
  json models = json::array();
  for (Model m : c.models) models.push_back(model_name(m));
  json j{{"study", study_name(c.study)},
         {"n", c.n},
         {"reps", c.reps},
         {"alpha", c.alpha},
         {"percentiles", c.percentiles},
         {"models", models},
         {"seed", c.seed},
         {"route", route_name(c.route)},
         {"replicates", c.replicates},
         {"aggregate", aggregate_name(c.aggregate)}};
  if (c.route == Route::parametric) {
    j["family_x"] = c.cdf_x.family_name();
    j["family_y"] = c.cdf_y.family_name();
  }
  if (c.study == Study::power) {
    j["n_min"] = c.n_min;
    j["n_max"] = c.n_max;
  }
  return j;
}

void provenance_csv(std::ostringstream& out, const StudyConfig& c) {
  out << "# qcorr " << kVersion << "\n";
  out << "# study=" << study_name(c.study) << " n=" << c.n << " reps=" << c.reps
      << " alpha=" << fmt(c.alpha) << " seed=" << c.seed << " route=" << route_name(c.route)
      << " replicates=" << c.replicates << " aggregate=" << aggregate_name(c.aggregate) << "\n";
}

json gamma_to_json(const GammaTestReport& r) {
  json j{{"statistic", r.statistic}, {"rate", r.rate},       {"p_value", r.p_value},
         {"alpha", r.alpha},         {"reject", r.reject},   {"variant", variant_name(r.variant)},
         {"n", r.n},                 {"degenerate", r.degenerate}};
  if (r.threshold_percentile) j["threshold_percentile"] = *r.threshold_percentile;
  return j;
}

json fisher_to_json(const FisherReport& r) {
  return json{{"r", r.r},         {"w", r.w},           {"z", r.z}, {"p_value", r.p_value},
              {"alpha", r.alpha}, {"reject", r.reject}, {"n", r.n}};
}

}  // namespace

double ks_statistic(const Eigen::Ref<const Eigen::ArrayXd>& sample,
                    const std::function<double(double)>& cdf) {
  const Eigen::Index n = sample.size();
  if (n < 1) throw std::invalid_argument("ks_statistic: empty sample");
  Eigen::ArrayXd sorted = sample;
  std::sort(sorted.data(), sorted.data() + n);
  const double dn = static_cast<double>(n);
  double d = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double f = cdf(sorted[i]);
    d = std::max(d, f - static_cast<double>(i) / dn);
    d = std::max(d, static_cast<double>(i + 1) / dn - f);
  }
  return d;
}

Route parse_route(const std::string& name) {
  if (name == "rank") return Route::rank;
  if (name == "empirical") return Route::empirical;
  if (name == "parametric") return Route::parametric;
  throw std::invalid_argument("unknown route: " + name);
}

const char* route_name(Route r) {
  switch (r) {
    case Route::rank: return "rank";
    case Route::empirical: return "empirical";
    case Route::parametric: return "parametric";
  }
  return "?";
}

const char* study_name(Study s) {
  switch (s) {
    case Study::table1: return "table1";
    case Study::power: return "power";
    case Study::nullcal: return "nullcal";
    case Study::datatest: return "datatest";
  }
  return "?";
}

const char* aggregate_name(Aggregate a) {
  return a == Aggregate::median ? "median" : "mean";
}

// ---------------------------------------------------------------------------
// datatest

DataTestReport run_data_test(const PairedSample& sample, const StudyConfig& config_in) {
  StudyConfig config = config_in;
  config.percentiles = normalized_percentiles(config.percentiles);
  DataTestReport report;
  report.config = config;

  bool tx = false, ty = false;
  stable_ranks(sample.xs, &tx);
  stable_ranks(sample.ys, &ty);
  report.had_ties = tx || ty;

  const std::uint64_t rank_seed = rng::derive(config.seed, kRankTag);

  switch (config.route) {
    case Route::rank: {
      const auto summary =
          rank_quotient(sample, rank_seed, config.replicates, config.aggregate);
      report.plain = gamma_independence_test(summary, config.alpha);
      for (double p : config.percentiles) {
        // One shared rank seed across percentiles keeps the per-replicate
        // scores fixed, so the statistic is monotone along the grid.
        const auto tail =
            tail_quotient_rank(sample, p, rank_seed, config.replicates, config.aggregate);
        report.tail.push_back(gamma_tail_test(tail, config.alpha, p));
      }
      break;
    }
    case Route::empirical:
    case Route::parametric: {
      const FrechetScores scores =
          config.route == Route::empirical
              ? empirical_scores(sample)
              : parametric_scores(sample, config.cdf_x, config.cdf_y);
      report.plain = gamma_independence_test(plain_quotient(scores), config.alpha);
      for (double p : config.percentiles) {
        const auto tail = tail_quotient_correlation(scores, frechet_quantile(p));
        report.tail.push_back(gamma_tail_test(tail, config.alpha, p));
      }
      break;
    }
  }

  report.fisher = fisher_z_test(sample, config.alpha);
  return report;
}

std::string DataTestReport::to_csv() const {
  std::ostringstream out;
  provenance_csv(out, config);
  out << "test,percentile,statistic,rate,p_value,reject,degenerate\n";
  out << "gamma,," << fmt(plain.statistic) << ',' << fmt(plain.rate) << ','
      << fmt(plain.p_value) << ',' << (plain.reject ? "true" : "false") << ','
      << (plain.degenerate ? "true" : "false") << '\n';
  out << "fisher_z,," << fmt(fisher.z) << ",," << fmt(fisher.p_value) << ','
      << (fisher.reject ? "true" : "false") << ",\n";
  for (const auto& t : tail)
    out << "tail_gamma," << fmt(t.threshold_percentile.value_or(0.0)) << ','
        << fmt(t.statistic) << ',' << fmt(t.rate) << ',' << fmt(t.p_value) << ','
        << (t.reject ? "true" : "false") << ',' << (t.degenerate ? "true" : "false") << '\n';
  return out.str();
}

std::string DataTestReport::to_json() const {
  json j{{"version", kVersion},
         {"config", config_to_json(config)},
         {"ties", had_ties},
         {"plain", gamma_to_json(plain)},
         {"fisher", fisher_to_json(fisher)}};
  json tails = json::array();
  for (const auto& t : tail) tails.push_back(gamma_to_json(t));
  j["tail"] = tails;
  return j.dump(2);
}

// ---------------------------------------------------------------------------
// table1

Table1Report run_table1(const StudyConfig& config_in) {
  StudyConfig config = config_in;
  config.percentiles = normalized_percentiles(config.percentiles);
  Table1Report report;
  report.config = config;
  report.percentiles = config.percentiles;
  report.models = config.models;
  const auto np = static_cast<Eigen::Index>(config.percentiles.size());
  const auto nm = static_cast<Eigen::Index>(config.models.size());
  report.median_p.setZero(np, nm);
  report.median_stat.setZero(np, nm);
  report.rejection_rate.setZero(np, nm);

  for (Eigen::Index mi = 0; mi < nm; ++mi) {
    std::vector<std::vector<double>> pvals(static_cast<std::size_t>(np));
    std::vector<std::vector<double>> stats(static_cast<std::size_t>(np));
    std::vector<double> rejects(static_cast<std::size_t>(np), 0.0);
    const std::uint64_t model_seed =
        rng::derive(rng::derive(config.seed, kModelTag), static_cast<std::uint64_t>(mi));

    for (int rep = 0; rep < config.reps; ++rep) {
      const std::uint64_t rep_seed = rng::derive(model_seed, static_cast<std::uint64_t>(rep));
      const PairedSample sample =
          generate(spec_with_defaults(config.models[static_cast<std::size_t>(mi)], config.n,
                                      rep_seed));
      if (config.route == Route::rank) {
        const std::uint64_t rank_seed = rng::derive(rep_seed, kRankTag);
        for (Eigen::Index pi = 0; pi < np; ++pi) {
          const double p = config.percentiles[static_cast<std::size_t>(pi)];
          const auto tail =
              tail_quotient_rank(sample, p, rank_seed, config.replicates, config.aggregate);
          const auto test = gamma_tail_test(tail, config.alpha, p);
          pvals[static_cast<std::size_t>(pi)].push_back(test.p_value);
          stats[static_cast<std::size_t>(pi)].push_back(test.statistic);
          if (test.reject) rejects[static_cast<std::size_t>(pi)] += 1.0;
        }
      } else {
        const FrechetScores scores = empirical_scores(sample);
        for (Eigen::Index pi = 0; pi < np; ++pi) {
          const double p = config.percentiles[static_cast<std::size_t>(pi)];
          const auto tail = tail_quotient_correlation(scores, frechet_quantile(p));
          const auto test = gamma_tail_test(tail, config.alpha, p);
          pvals[static_cast<std::size_t>(pi)].push_back(test.p_value);
          stats[static_cast<std::size_t>(pi)].push_back(test.statistic);
          if (test.reject) rejects[static_cast<std::size_t>(pi)] += 1.0;
        }
      }
    }
    for (Eigen::Index pi = 0; pi < np; ++pi) {
      report.median_p(pi, mi) = median_of(pvals[static_cast<std::size_t>(pi)]);
      report.median_stat(pi, mi) = median_of(stats[static_cast<std::size_t>(pi)]);
      report.rejection_rate(pi, mi) =
          rejects[static_cast<std::size_t>(pi)] / static_cast<double>(config.reps);
    }
  }
  return report;
}

std::string Table1Report::to_csv() const {
  std::ostringstream out;
  provenance_csv(out, config);
  out << "percentile";
  for (Model m : models) out << ',' << model_name(m);
  for (Model m : models) out << ',' << model_name(m) << "_reject_rate";
  out << '\n';
  for (std::size_t pi = 0; pi < percentiles.size(); ++pi) {
    out << fmt(percentiles[pi]);
    for (std::size_t mi = 0; mi < models.size(); ++mi)
      out << ',' << fmt(median_p(static_cast<Eigen::Index>(pi), static_cast<Eigen::Index>(mi)));
    for (std::size_t mi = 0; mi < models.size(); ++mi)
      out << ','
          << fmt(rejection_rate(static_cast<Eigen::Index>(pi), static_cast<Eigen::Index>(mi)));
    out << '\n';
  }
  return out.str();
}

std::string Table1Report::to_json() const {
  json j{{"version", kVersion}, {"config", config_to_json(config)}};
  j["percentiles"] = percentiles;
  json names = json::array();
  for (Model m : models) names.push_back(model_name(m));
  j["models"] = names;
  const auto matrix = [&](const Eigen::ArrayXXd& a) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      json row = json::array();
      for (Eigen::Index k = 0; k < a.cols(); ++k) row.push_back(a(i, k));
      rows.push_back(row);
    }
    return rows;
  };
  j["median_p"] = matrix(median_p);
  j["median_statistic"] = matrix(median_stat);
  j["rejection_rate"] = matrix(rejection_rate);
  return j.dump(2);
}

// ---------------------------------------------------------------------------
// power

PowerReport run_power_study(const StudyConfig& config) {
  PowerReport report;
  report.config = config;
  if (!config.power_ns.empty()) {
    report.ns = config.power_ns;
  } else {
    if (config.n_min < 4 || config.n_max < config.n_min)
      throw std::invalid_argument("run_power_study: need 4 <= n_min <= n_max");
    for (int n = config.n_min; n <= config.n_max; ++n) report.ns.push_back(n);
  }

  for (int n : report.ns) {
    const std::uint64_t n_seed =
        rng::derive(rng::derive(config.seed, kPowerTag), static_cast<std::uint64_t>(n));
    int gamma_rejects = 0;
    int fisher_rejects = 0;
    for (int trial = 0; trial < config.reps; ++trial) {
      const std::uint64_t trial_seed = rng::derive(n_seed, static_cast<std::uint64_t>(trial));
      auto g = rng::stream(trial_seed, 1);
      Eigen::ArrayXd xs(n);
      for (int i = 0; i < n; i += 2) {
        const auto [z1, z2] = rng::normal_pair(g);
        xs[i] = z1;
        if (i + 1 < n) xs[i + 1] = z2;
      }
      const PairedSample sample(xs, xs.square());
      const auto summary = rank_quotient(sample, rng::derive(trial_seed, kRankTag),
                                         config.replicates, config.aggregate);
      if (gamma_independence_test(summary, config.alpha).reject) ++gamma_rejects;
      if (fisher_z_test(sample, config.alpha).reject) ++fisher_rejects;
    }
    report.gamma_power.push_back(static_cast<double>(gamma_rejects) /
                                 static_cast<double>(config.reps));
    report.fisher_power.push_back(static_cast<double>(fisher_rejects) /
                                  static_cast<double>(config.reps));
  }
  return report;
}

std::string PowerReport::to_csv() const {
  std::ostringstream out;
  provenance_csv(out, config);
  out << "n,gamma_power,fisher_power\n";
  for (std::size_t i = 0; i < ns.size(); ++i)
    out << ns[i] << ',' << fmt(gamma_power[i]) << ',' << fmt(fisher_power[i]) << '\n';
  return out.str();
}

std::string PowerReport::to_json() const {
  json j{{"version", kVersion}, {"config", config_to_json(config)}};
  json rows = json::array();
  for (std::size_t i = 0; i < ns.size(); ++i)
    rows.push_back(json{{"n", ns[i]},
                        {"gamma_power", gamma_power[i]},
                        {"fisher_power", fisher_power[i]}});
  j["rows"] = rows;
  return j.dump(2);
}

// ---------------------------------------------------------------------------
// nullcal

NullCalReport run_null_calibration(const StudyConfig& config_in) {
  StudyConfig config = config_in;
  config.percentiles = normalized_percentiles(config.percentiles);
  NullCalReport report;
  report.config = config;
  const int trials = config.reps;
  const double n = static_cast<double>(config.n);

  Eigen::ArrayXd plain_stats(trials);
  Eigen::ArrayXXd tail_stats(trials, static_cast<Eigen::Index>(config.percentiles.size()));

  for (int trial = 0; trial < trials; ++trial) {
    const std::uint64_t trial_seed = rng::derive(config.seed, static_cast<std::uint64_t>(trial));
    ModelSpec spec;
    spec.model = Model::a;
    spec.n = config.n;
    spec.seed = trial_seed;
    const PairedSample sample = generate(spec);

    switch (config.route) {
      case Route::parametric: {
        // Model (a) draws are already on the unit Frechet scale.
        const FrechetScores scores(sample.xs, sample.ys, Transform::parametric);
        plain_stats[trial] = n * plain_quotient(scores).q;
        for (std::size_t pi = 0; pi < config.percentiles.size(); ++pi) {
          const double u = frechet_quantile(config.percentiles[pi]);
          tail_stats(trial, static_cast<Eigen::Index>(pi)) =
              n * tail_quotient_correlation(scores, u).q;
        }
        break;
      }
      case Route::empirical: {
        const FrechetScores scores = empirical_scores(sample);
        plain_stats[trial] = n * plain_quotient(scores).q;
        for (std::size_t pi = 0; pi < config.percentiles.size(); ++pi) {
          const double u = frechet_quantile(config.percentiles[pi]);
          tail_stats(trial, static_cast<Eigen::Index>(pi)) =
              n * tail_quotient_correlation(scores, u).q;
        }
        break;
      }
      case Route::rank: {
        const std::uint64_t rank_seed = rng::derive(trial_seed, kRankTag);
        plain_stats[trial] =
            n * rank_quotient(sample, rank_seed, config.replicates, config.aggregate).q;
        for (std::size_t pi = 0; pi < config.percentiles.size(); ++pi) {
          tail_stats(trial, static_cast<Eigen::Index>(pi)) =
              n * tail_quotient_rank(sample, config.percentiles[pi], rank_seed,
                                     config.replicates, config.aggregate)
                      .q;
        }
        break;
      }
    }
  }

  const auto summarize = [&](const Eigen::ArrayXd& stats, double rate, const char* which,
                             std::optional<double> percentile) {
    NullCalRow row;
    row.which = which;
    row.percentile = percentile;
    row.rate = rate;
    const GammaRef ref(rate);
    row.ks = ks_statistic(stats, [&](double x) { return ref.cdf(std::max(x, 0.0)); });
    const double cutoff = ref.upper_quantile(config.alpha);
    row.type1_rate = static_cast<double>((stats > cutoff).count()) /
                     static_cast<double>(stats.size());
    row.mean_statistic = stats.mean();
    report.rows.push_back(row);
  };

  summarize(plain_stats, 1.0, "plain", std::nullopt);
  for (std::size_t pi = 0; pi < config.percentiles.size(); ++pi) {
    const double p = config.percentiles[pi];
    summarize(tail_stats.col(static_cast<Eigen::Index>(pi)), 1.0 - p, "tail", p);
  }
  return report;
}

std::string NullCalReport::to_csv() const {
  std::ostringstream out;
  provenance_csv(out, config);
  out << "which,percentile,rate,ks,type1_rate,mean_statistic\n";
  for (const auto& r : rows) {
    out << r.which << ',';
    if (r.percentile) out << fmt(*r.percentile);
    out << ',' << fmt(r.rate) << ',' << fmt(r.ks) << ',' << fmt(r.type1_rate) << ','
        << fmt(r.mean_statistic) << '\n';
  }
  return out.str();
}

std::string NullCalReport::to_json() const {
  json j{{"version", kVersion}, {"config", config_to_json(config)}};
  json rows_json = json::array();
  for (const auto& r : rows) {
    json row{{"which", r.which},
             {"rate", r.rate},
             {"ks", r.ks},
             {"type1_rate", r.type1_rate},
             {"mean_statistic", r.mean_statistic}};
    if (r.percentile) row["percentile"] = *r.percentile;
    rows_json.push_back(row);
  }
  j["rows"] = rows_json;
  return j.dump(2);
}

}  // namespace qcorr
