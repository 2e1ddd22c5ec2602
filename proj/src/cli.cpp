#include "calrank/cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "calrank/abtest.hpp"
#include "calrank/canonical.hpp"
#include "calrank/config.hpp"
#include "calrank/error.hpp"
#include "calrank/harness.hpp"
#include "calrank/report.hpp"

namespace calrank {

namespace {

struct Flags {
  std::string config;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::uint64_t inner_samples = 0;
  std::string gamma;
  std::string n;
  std::string m;
  std::string scenario;
  std::string estimators;
  std::string losses;
  std::string out;
  std::string format = "csv";
  int threads = 0;
  double noise_sigma = 0.0;
  bool multi_pair = false;
  // oracle only
  std::string setting;
  std::optional<double> x1;
  std::optional<double> x2;
};

struct Options {
  CLI::Option* trials = nullptr;
  CLI::Option* seed = nullptr;
  CLI::Option* inner_samples = nullptr;
  CLI::Option* gamma = nullptr;
  CLI::Option* n = nullptr;
  CLI::Option* m = nullptr;
  CLI::Option* scenario = nullptr;
  CLI::Option* estimators = nullptr;
  CLI::Option* losses = nullptr;
  CLI::Option* threads = nullptr;
  CLI::Option* noise_sigma = nullptr;
  CLI::Option* multi_pair = nullptr;
};

void add_output_flags(CLI::App* sub, Flags& f) {
  sub->add_option("--out", f.out, "write the report to this path instead of stdout");
  sub->add_option("--format", f.format, "report format")->check(CLI::IsMember({"csv", "json"}));
}

Options add_run_flags(CLI::App* sub, Flags& f, bool ranking) {
  Options o;
  sub->add_option("--config", f.config, "key=value experiment file");
  o.trials = sub->add_option("--trials", f.trials, "Monte Carlo trials");
  o.seed = sub->add_option("--seed", f.seed, "64-bit seed");
  o.gamma = sub->add_option("--gamma", f.gamma, "ratio weight gamma (tradeoff: comma list of sweep points)");
  o.m = sub->add_option("--m", f.m, ranking ? "reviewer count override" : "reviewer counts, comma separated");
  o.scenario = sub->add_option("--scenario", f.scenario, "calibration preset");
  o.estimators = sub->add_option("--estimators", f.estimators, "estimator roster, comma separated");
  o.threads = sub->add_option("--threads", f.threads, "worker threads (0: all available)");
  o.noise_sigma = sub->add_option("--noise-sigma", f.noise_sigma, "gaussian score noise");
  if (ranking) {
    o.n = sub->add_option("--n", f.n, "item counts, comma separated");
    o.inner_samples = sub->add_option("--inner-samples", f.inner_samples, "inner samples per outer trial");
    o.losses = sub->add_option("--loss", f.losses, "losses: zero-one, kendall-tau, spearman-footrule");
    o.multi_pair = sub->add_flag("--multi-pair", f.multi_pair, "metric-rank: correct every disjoint identical pair");
  }
  add_output_flags(sub, f);
  return o;
}

void apply_flags(const Flags& f, const Options& o, ScenarioConfig& cfg) {
  if (o.trials->count()) cfg.trials = f.trials;
  if (o.seed->count()) cfg.seed = f.seed;
  if (o.gamma->count()) {
    const auto gammas = parse_double_list(f.gamma);
    cfg.gammas = gammas;
    cfg.weight = WeightFunction::ratio(gammas.front());
  }
  if (o.m->count()) cfg.m_values = parse_int_list(f.m);
  if (o.scenario->count()) cfg.calibration = f.scenario;
  if (o.estimators->count()) cfg.estimators = split_list(f.estimators);
  if (o.threads->count()) cfg.threads = f.threads;
  if (o.noise_sigma->count()) cfg.noise = NoiseModel::gaussian(f.noise_sigma);
  if (o.n && o.n->count()) cfg.n_values = parse_int_list(f.n);
  if (o.inner_samples && o.inner_samples->count()) cfg.inner_samples = f.inner_samples;
  if (o.losses && o.losses->count()) {
    cfg.losses.clear();
    for (const auto& name : split_list(f.losses)) cfg.losses.push_back(parse_loss_kind(name));
  }
  if (o.multi_pair && o.multi_pair->count()) cfg.multi_pair = f.multi_pair;
}

ReportRow oracle_row(std::string scenario, std::string estimator, int m, double gamma, double success) {
  ReportRow row;
  row.scenario = std::move(scenario);
  row.estimator = std::move(estimator);
  row.n = 2;
  row.m = m;
  row.gamma = gamma;
  row.trials = 0;
  row.error_rate = 1.0 - success;
  row.rel_improvement_pct = relative_improvement(row.error_rate, 0.5);
  return row;
}

Report run_oracle(const Flags& f, const Options& o) {
  if (!f.x1 || !f.x2) throw argument_error("oracle needs --x1 and --x2");
  if (*f.x1 == *f.x2) throw argument_error("oracle needs distinct --x1 and --x2");
  const Setting setting = parse_setting(f.setting);
  if (setting == Setting::ranking) throw argument_error("oracle supports --setting canonical or abtest");
  ScenarioConfig cfg = default_config(setting);
  if (!f.config.empty()) apply_config_file(f.config, cfg);
  apply_flags(f, o, cfg);
  if (!cfg.noise.is_none()) throw argument_error("oracle values are exact for noiseless scores only");
  const double gamma = [&] {
    const auto* r = std::get_if<WeightFunction::Ratio>(&cfg.weight.form());
    return r ? r->gamma : std::numeric_limits<double>::quiet_NaN();
  }();

  Report report;
  if (setting == Setting::canonical) {
    std::vector<CalibrationFunction> fs{CalibrationFunction::identity(), CalibrationFunction::identity()};
    if (cfg.calibration == "one-biased") {
      fs[1] = CalibrationFunction::shift(1.0);
    } else if (cfg.calibration != "perfect") {
      throw argument_error("canonical calibration must be perfect or one-biased");
    }
    for (const auto& e : cfg.estimators) {
      double success = 0.5;
      if (e == "canonical") {
        success = canonical_success_probability(*f.x1, *f.x2, fs[0], fs[1], cfg.weight);
      } else if (e == "sign") {
        success = exact_abtest_success(*f.x1, *f.x2, fs, cfg.weight, AbEstimator::sign);
      } else if (e != "random") {
        throw argument_error("unknown canonical estimator: " + e);
      }
      report.rows.push_back(oracle_row(cfg.calibration, e, 2, gamma, success));
    }
  } else {
    const AbPreset preset = parse_ab_preset(cfg.calibration);
    for (int m : cfg.m_values) {
      if (m < 2 || m % 2 != 0) throw argument_error("abtest reviewer counts must be even and >= 2");
      const auto fs = ab_calibrations(preset, m);
      for (const auto& e : cfg.estimators) {
        const double success = exact_abtest_success(*f.x1, *f.x2, fs, cfg.weight, parse_ab_estimator(e));
        report.rows.push_back(oracle_row(cfg.calibration, e, m, gamma, success));
      }
    }
  }
  return report;
}

void emit(const Report& report, const Flags& f, std::ostream& out) {
  std::ostringstream buffer;
  write_report(report, parse_report_format(f.format), buffer);
  if (f.out.empty()) {
    out << buffer.str();
    return;
  }
  std::ofstream file(f.out, std::ios::binary | std::ios::trunc);
  if (!file) throw error("cannot open output file: " + f.out);
  file << buffer.str();
  if (!file.flush()) throw error("failed writing output file: " + f.out);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Calibration-robust pairwise and ranking estimators: simulations and exact oracles", "calrank"};
  app.require_subcommand(1);
  Flags f;

  CLI::App* canonical = app.add_subcommand("canonical", "two items, two reviewers");
  const Options canonical_opts = add_run_flags(canonical, f, false);
  CLI::App* abtest = app.add_subcommand("abtest", "A/B test with m reviewers");
  const Options abtest_opts = add_run_flags(abtest, f, false);
  CLI::App* rank = app.add_subcommand("rank", "cardinal ranking from pairwise scores");
  const Options rank_opts = add_run_flags(rank, f, true);
  CLI::App* metric = app.add_subcommand("metric-rank", "ranking with identical-pair correction");
  const Options metric_opts = add_run_flags(metric, f, true);
  CLI::App* tradeoff = app.add_subcommand("tradeoff", "ratio-weight gamma sweep, perfect vs one-biased");
  const Options tradeoff_opts = add_run_flags(tradeoff, f, false);
  CLI::App* oracle = app.add_subcommand("oracle", "exact success probabilities for fixed item values");
  const Options oracle_opts = add_run_flags(oracle, f, false);
  oracle->add_option("--setting", f.setting, "canonical or abtest")->required();
  oracle->add_option("--x1", f.x1, "value of item 1");
  oracle->add_option("--x2", f.x2, "value of item 2");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  // Building the configuration is part of usage: any rejected value exits 2.
  ScenarioConfig cfg;
  try {
    if (!oracle->parsed()) {
      const bool is_rank = rank->parsed() || metric->parsed();
      cfg = default_config(abtest->parsed() ? Setting::abtest : is_rank ? Setting::ranking : Setting::canonical);
      if (metric->parsed()) cfg.estimators = {"index-ties", "metric"};
      if (!f.config.empty()) apply_config_file(f.config, cfg);
      const Options& opts = canonical->parsed() ? canonical_opts
                            : abtest->parsed()  ? abtest_opts
                            : rank->parsed()    ? rank_opts
                            : metric->parsed()  ? metric_opts
                                                : tradeoff_opts;
      apply_flags(f, opts, cfg);
      if (tradeoff->parsed()) {
        ScenarioConfig point = cfg;
        point.estimators = {"canonical"};
        validate(point);
      } else {
        validate(cfg);
      }
    }
  } catch (const error& e) {
    err << "calrank: " << e.what() << '\n';
    return 2;
  }

  try {
    Report report;
    if (oracle->parsed()) {
      report = run_oracle(f, oracle_opts);
    } else if (canonical->parsed()) {
      report = run_canonical_scenario(cfg);
    } else if (abtest->parsed()) {
      report = run_abtest_scenario(cfg);
    } else if (rank->parsed() || metric->parsed()) {
      report = run_ranking_experiment(cfg);
    } else {
      report = run_tradeoff_sweep(cfg);
    }
    emit(report, f, out);
    return 0;
  } catch (const argument_error& e) {
    err << "calrank: " << e.what() << '\n';
    return 2;
  } catch (const error& e) {
    // The oracle validates its inputs while computing.
    err << "calrank: " << e.what() << '\n';
    return oracle->parsed() ? 2 : 1;
  } catch (const std::exception& e) {
    err << "calrank: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace calrank
