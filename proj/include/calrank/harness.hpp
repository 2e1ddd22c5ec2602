#pragma once

// Scenario presets and the Monte Carlo engine behind the A/B, ranking and
// weight-tradeoff experiments.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "calrank/losses.hpp"
#include "calrank/model.hpp"

namespace calrank {

enum class Setting { canonical, abtest, ranking };

std::string_view to_string(Setting s);
Setting parse_setting(std::string_view name);

struct ValueLaw {
  double lo = 0.0;
  double hi = 1.0;
};

struct ScenarioConfig {
  Setting setting = Setting::canonical;
  // Ranking: item counts to sweep.
  std::vector<int> n_values;
  // A/B: reviewer counts to sweep. Ranking: optional single override of
  // m = floor(C(n,2)/2).
  std::vector<int> m_values;
  // Default: uniform(0, 1) for two-item settings, uniform(0, n) for ranking.
  std::optional<ValueLaw> value_law;
  // canonical: perfect | one-biased
  // abtest:    one-biased | incremental | incremental-plus-biased
  // ranking:   affine-uniform | identity
  std::string calibration;
  NoiseModel noise;
  WeightFunction weight;
  std::vector<std::string> estimators;
  std::vector<LossKind> losses{LossKind::kendall_tau};
  // Tradeoff sweep points; empty means 2^k for k = -10..10.
  std::vector<double> gammas;
  std::uint64_t trials = 10000;
  std::uint64_t inner_samples = 1;
  std::uint64_t seed = 1;
  int threads = 0;
  // Run the serial reference loop instead of the OpenMP kernel.
  bool serial_reference = false;
  bool multi_pair = false;
};

// Throws argument_error naming the first violated constraint.
void validate(const ScenarioConfig& cfg);

ScenarioConfig default_config(Setting setting);

struct ReportRow {
  std::string scenario;
  std::string estimator;
  int n = 0;
  int m = 0;
  double gamma = 0.0;  // NaN when the weight function is not a ratio
  std::uint64_t trials = 0;
  double error_rate = 0.0;  // mean loss
  double rel_improvement_pct = 0.0;
  double std_err = 0.0;  // standard error of error_rate
  // Standard error of rel_improvement_pct; not part of the CSV/JSON schema.
  double improvement_std_err = 0.0;

  bool operator==(const ReportRow&) const = default;
};

struct Report {
  std::vector<ReportRow> rows;

  const ReportRow* find(std::string_view scenario, std::string_view estimator, int n, int m) const;
};

// Two items, two reviewers, one draw of (x1, x2) per trial. Estimators:
// canonical, random, sign. Improvements are against random guessing's
// exact 0.5 error rate.
Report run_canonical_scenario(const ScenarioConfig& cfg);

// One row per (m, estimator); estimators: random, sign, mean, median, majority.
Report run_abtest_scenario(const ScenarioConfig& cfg);

// Per n: trials outer draws of (values, calibrations), inner_samples inner
// draws of (assignment, estimator randomness). Estimators: index-ties,
// uniform-topological, cardinal, cardinal-uniform, metric, metric-uniform.
// Improvements are against index-ties, averaged over outer trials.
Report run_ranking_experiment(const ScenarioConfig& cfg);

// Canonical estimator with ratio weights over the gamma sweep, under perfect
// calibration and one biased reviewer.
Report run_tradeoff_sweep(const ScenarioConfig& cfg);

std::vector<double> default_gamma_sweep();

// Calibrations used by the ranking experiment: affine with slope and
// intercept uniform on [0, 1] (exact zero slopes rejected), or identity.
std::vector<CalibrationFunction> ranking_calibrations(std::string_view preset, int reviewers, Stream& rng);

}  // namespace calrank
