// Command-line front end: simulation, marginal transforms, gamma tests and
// the study drivers, with CSV/JSON reports.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qcorr/csv.hpp"
#include "qcorr/dist.hpp"
#include "qcorr/marginals.hpp"
#include "qcorr/models.hpp"
#include "qcorr/quotient.hpp"
#include "qcorr/rng.hpp"
#include "qcorr/studies.hpp"
#include "qcorr/version.hpp"

namespace {

constexpr std::uint64_t kDefaultSeed = 1;

std::uint64_t env_seed_or(std::uint64_t fallback) {
  if (const char* env = std::getenv("QCORR_SEED")) {
    try {
      return static_cast<std::uint64_t>(std::stoull(env));
    } catch (const std::exception&) {
      throw CLI::ValidationError("QCORR_SEED", "QCORR_SEED must be an unsigned integer");
    }
  }
  return fallback;
}

qcorr::CdfDescriptor make_descriptor(const std::string& family,
                                     const std::vector<double>& params,
                                     const Eigen::Ref<const Eigen::ArrayXd>& margin) {
  using Family = qcorr::CdfDescriptor::Family;
  const Family f = qcorr::CdfDescriptor::parse_family(family);
  if (params.empty()) return qcorr::CdfDescriptor::estimated(f, margin);
  switch (f) {
    case Family::normal:
      if (params.size() != 2)
        throw CLI::ValidationError("--params", "normal takes mean,sd");
      return qcorr::CdfDescriptor::normal(params[0], params[1]);
    case Family::student_t:
      if (params.size() != 1) throw CLI::ValidationError("--params", "t takes df");
      return qcorr::CdfDescriptor::student_t(params[0]);
    case Family::exponential:
      if (params.size() != 1)
        throw CLI::ValidationError("--params", "exponential takes rate");
      return qcorr::CdfDescriptor::exponential(params[0]);
    case Family::frechet:
    case Family::uniform:
      throw CLI::ValidationError("--params", "family takes no parameters");
  }
  throw CLI::ValidationError("--family", "unknown family");
}

void warn_ties(bool had_ties) {
  if (had_ties)
    std::cerr << "warning: tied values in a margin; ranks broken by first occurrence\n";
}

struct CommonTestOptions {
  std::string in_path;
  std::string route = "rank";
  std::string family = "frechet";
  std::vector<double> params;
  std::string aggregate = "median";
  double alpha = 0.05;
  int replicates = 10;
  std::uint64_t seed = kDefaultSeed;
  bool json = false;
};

void add_test_options(CLI::App* cmd, CommonTestOptions& opt, bool with_percentiles,
                      std::vector<double>* percentiles) {
  cmd->add_option("--in", opt.in_path, "input CSV with two numeric columns")->required();
  cmd->add_option("--route", opt.route, "marginal transform route")
      ->check(CLI::IsMember({"rank", "empirical", "parametric"}))
      ->capture_default_str();
  cmd->add_option("--family", opt.family, "marginal family for --route parametric")
      ->capture_default_str();
  cmd->add_option("--params", opt.params,
                  "fixed family parameters (omit to estimate from the data)")
      ->delimiter(',');
  cmd->add_option("--alpha", opt.alpha, "significance level")
      ->check(CLI::Range(1e-12, 1.0 - 1e-12))
      ->capture_default_str();
  cmd->add_option("--replicates", opt.replicates, "rank-route replicates")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--aggregate", opt.aggregate, "rank-route replicate aggregation")
      ->check(CLI::IsMember({"median", "mean"}))
      ->capture_default_str();
  cmd->add_option("--seed", opt.seed, "RNG seed (QCORR_SEED overrides the default)");
  cmd->add_flag("--json", opt.json, "emit a JSON report");
  if (with_percentiles)
    cmd->add_option("--percentiles", *percentiles, "threshold percentiles in (0,1)")
        ->delimiter(',');
}

qcorr::StudyConfig config_from(const CommonTestOptions& opt, const qcorr::PairedSample& sample,
                               std::vector<double> percentiles) {
  qcorr::StudyConfig config;
  config.study = qcorr::Study::datatest;
  config.n = sample.n();
  config.reps = 1;
  config.alpha = opt.alpha;
  config.percentiles = std::move(percentiles);
  config.seed = opt.seed;
  config.route = qcorr::parse_route(opt.route);
  config.replicates = opt.replicates;
  config.aggregate =
      opt.aggregate == "mean" ? qcorr::Aggregate::mean : qcorr::Aggregate::median;
  if (config.route == qcorr::Route::parametric) {
    config.cdf_x = make_descriptor(opt.family, opt.params, sample.xs);
    config.cdf_y = make_descriptor(opt.family, opt.params, sample.ys);
  }
  return config;
}

int run_app(int argc, char** argv) {
  CLI::App app{std::string("quotient correlation toolkit ") + qcorr::kVersion, "qcorr"};
  app.require_subcommand(1);

  // --- simulate ---
  auto* simulate = app.add_subcommand("simulate", "draw a bivariate sample from a model");
  std::string sim_model;
  Eigen::Index sim_n = 500;
  std::uint64_t sim_seed = kDefaultSeed;
  bool sim_seed_given = false;
  double sim_theta = 0.4472;
  double sim_rho = 0.8;
  int sim_df = 4;
  std::string sim_out;
  simulate->add_option("--model", sim_model, "one of a..h or m4")
      ->check(CLI::IsMember({"a", "b", "c", "d", "e", "f", "g", "h", "m4"}))
      ->required();
  simulate->add_option("--n", sim_n, "sample size")->check(CLI::Range(2, 1 << 30))->required();
  auto* sim_seed_opt = simulate->add_option("--seed", sim_seed, "RNG seed");
  simulate->add_option("--theta", sim_theta, "copula parameter for models b,c")
      ->check(CLI::Range(1e-12, 1.0))
      ->capture_default_str();
  simulate->add_option("--rho", sim_rho, "correlation for models f,h")
      ->check(CLI::Range(-0.999999, 0.999999))
      ->capture_default_str();
  simulate->add_option("--df", sim_df, "degrees of freedom for model h")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  simulate->add_option("--out", sim_out, "output CSV path")->required();
  simulate->callback([&] {
    sim_seed_given = sim_seed_opt->count() > 0;
    const std::uint64_t seed = sim_seed_given ? sim_seed : env_seed_or(kDefaultSeed);
    qcorr::PairedSample sample = [&] {
      if (sim_model == "m4") {
        const auto coeffs = qcorr::simulate_m4_coefficients(30, seed);
        return qcorr::m4_pair(coeffs, sim_n, seed).first;
      }
      qcorr::ModelSpec spec;
      spec.model = qcorr::parse_model(sim_model);
      spec.n = sim_n;
      spec.seed = seed;
      spec.theta = sim_theta;
      spec.rho = sim_rho;
      spec.df = sim_df;
      return qcorr::generate(spec);
    }();
    qcorr::write_paired_csv(sim_out, sample);
  });

  // --- transform ---
  auto* transform = app.add_subcommand("transform", "map a sample onto the unit Frechet scale");
  std::string tr_in, tr_out;
  std::string tr_route;
  std::string tr_family = "frechet";
  std::vector<double> tr_params;
  std::uint64_t tr_seed = kDefaultSeed;
  transform->add_option("--in", tr_in, "input CSV")->required();
  transform->add_option("--route", tr_route, "rank, empirical or parametric")
      ->check(CLI::IsMember({"rank", "empirical", "parametric"}))
      ->required();
  transform->add_option("--family", tr_family, "marginal family for the parametric route")
      ->capture_default_str();
  transform->add_option("--params", tr_params, "fixed family parameters")->delimiter(',');
  transform->add_option("--seed", tr_seed, "RNG seed for the rank route");
  transform->add_option("--out", tr_out, "output CSV path")->required();
  transform->callback([&] {
    if (transform->count("--seed") == 0) tr_seed = env_seed_or(kDefaultSeed);
    const qcorr::PairedSample sample = qcorr::read_paired_csv_auto(tr_in);
    bool ties = false;
    const qcorr::Route route = qcorr::parse_route(tr_route);
    qcorr::FrechetScores scores = [&]() -> qcorr::FrechetScores {
      switch (route) {
        case qcorr::Route::empirical:
          return qcorr::empirical_scores(sample, &ties);
        case qcorr::Route::rank:
          return std::move(qcorr::rank_frechet_scores(sample, tr_seed, 1).front());
        case qcorr::Route::parametric:
        default:
          return qcorr::parametric_scores(sample,
                                          make_descriptor(tr_family, tr_params, sample.xs),
                                          make_descriptor(tr_family, tr_params, sample.ys));
      }
    }();
    warn_ties(ties);
    qcorr::write_paired_csv(tr_out, qcorr::PairedSample(scores.xs, scores.ys));
  });

  // --- qtest ---
  auto* qtest = app.add_subcommand("qtest", "full-sample gamma test plus Fisher Z");
  CommonTestOptions qopt;
  add_test_options(qtest, qopt, false, nullptr);
  qtest->callback([&] {
    if (qtest->count("--seed") == 0) qopt.seed = env_seed_or(kDefaultSeed);
    const qcorr::PairedSample sample = qcorr::read_paired_csv_auto(qopt.in_path);
    const auto report = qcorr::run_data_test(sample, config_from(qopt, sample, {}));
    warn_ties(report.had_ties);
    std::cout << (qopt.json ? report.to_json() + "\n" : report.to_csv());
  });

  // --- tailtest ---
  auto* tailtest = app.add_subcommand("tailtest", "tail gamma tests over a percentile grid");
  CommonTestOptions topt;
  std::vector<double> percentiles = {0.80, 0.825, 0.85, 0.875, 0.90, 0.925, 0.95, 0.975};
  add_test_options(tailtest, topt, true, &percentiles);
  tailtest->callback([&] {
    if (tailtest->count("--seed") == 0) topt.seed = env_seed_or(kDefaultSeed);
    for (double p : percentiles)
      if (!(p > 0.0) || !(p < 1.0))
        throw CLI::ValidationError("--percentiles", "percentiles must lie in (0,1)");
    const qcorr::PairedSample sample = qcorr::read_paired_csv_auto(topt.in_path);
    const auto report = qcorr::run_data_test(sample, config_from(topt, sample, percentiles));
    warn_ties(report.had_ties);
    std::cout << (topt.json ? report.to_json() + "\n" : report.to_csv());
  });

  // --- table1 ---
  auto* table1 = app.add_subcommand("table1", "percentile x model grid of tail gamma tests");
  qcorr::StudyConfig t1;
  t1.study = qcorr::Study::table1;
  t1.route = qcorr::Route::empirical;
  std::string t1_route = "empirical";
  std::uint64_t t1_seed = kDefaultSeed;
  bool t1_json = false;
  table1->add_option("--n", t1.n, "sample size per replication")
      ->check(CLI::Range(2, 1 << 30))
      ->capture_default_str();
  table1->add_option("--reps", t1.reps, "replications per cell")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  auto* t1_seed_opt = table1->add_option("--seed", t1_seed, "RNG seed");
  table1->add_option("--route", t1_route, "marginal transform route")
      ->check(CLI::IsMember({"rank", "empirical"}))
      ->capture_default_str();
  table1->add_option("--alpha", t1.alpha, "significance level")
      ->check(CLI::Range(1e-12, 1.0 - 1e-12))
      ->capture_default_str();
  table1->add_flag("--json", t1_json, "emit a JSON report");
  table1->callback([&] {
    t1.seed = t1_seed_opt->count() > 0 ? t1_seed : env_seed_or(kDefaultSeed);
    t1.route = qcorr::parse_route(t1_route);
    const auto report = qcorr::run_table1(t1);
    std::cout << (t1_json ? report.to_json() + "\n" : report.to_csv());
  });

  // --- power ---
  auto* power = app.add_subcommand("power", "power comparison on the Y = X^2 design");
  qcorr::StudyConfig pw;
  pw.study = qcorr::Study::power;
  std::string pw_design = "x2";
  std::uint64_t pw_seed = kDefaultSeed;
  bool pw_json = false;
  power->add_option("--design", pw_design, "dependence design")
      ->check(CLI::IsMember({"x2"}))
      ->capture_default_str();
  power->add_option("--nmin", pw.n_min, "smallest sample size")
      ->check(CLI::Range(4, 1 << 20))
      ->capture_default_str();
  power->add_option("--nmax", pw.n_max, "largest sample size")
      ->check(CLI::Range(4, 1 << 20))
      ->capture_default_str();
  power->add_option("--reps", pw.reps, "trials per sample size")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  auto* pw_seed_opt = power->add_option("--seed", pw_seed, "RNG seed");
  power->add_option("--alpha", pw.alpha, "significance level")
      ->check(CLI::Range(1e-12, 1.0 - 1e-12))
      ->capture_default_str();
  power->add_option("--replicates", pw.replicates, "rank-route replicates")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  power->add_flag("--json", pw_json, "emit a JSON report");
  power->callback([&] {
    pw.seed = pw_seed_opt->count() > 0 ? pw_seed : env_seed_or(kDefaultSeed);
    const auto report = qcorr::run_power_study(pw);
    std::cout << (pw_json ? report.to_json() + "\n" : report.to_csv());
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;  // usage errors exit 1, --help exits 0
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_app(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;  // data or domain error
  }
}
