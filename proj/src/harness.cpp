#include "calrank/harness.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "calrank/abtest.hpp"
#include "calrank/canonical.hpp"
#include "calrank/error.hpp"
#include "calrank/metric_ranking.hpp"
#include "calrank/ranking.hpp"
#include "calrank/trials.hpp"

namespace calrank {

namespace {

constexpr double kRandomGuessError = 0.5;

const std::vector<std::string> kCanonicalEstimators{"canonical", "random", "sign"};
const std::vector<std::string> kAbEstimators{"majority", "mean", "median", "sign", "random"};
const std::vector<std::string> kRankingEstimators{"index-ties", "uniform-topological", "cardinal",
                                                  "cardinal-uniform",  "metric",   "metric-uniform"};

std::uint64_t point_seed(std::uint64_t seed, std::size_t point) {
  return mix64(seed ^ mix64(0xA0761D6478BD642FULL * (point + 1)));
}

double gamma_of(const WeightFunction& w) {
  if (const auto* r = std::get_if<WeightFunction::Ratio>(&w.form())) return r->gamma;
  return std::numeric_limits<double>::quiet_NaN();
}

bool contains(const std::vector<std::string>& set, const std::string& name) {
  return std::find(set.begin(), set.end(), name) != set.end();
}

void require(bool ok, const std::string& message) {
  if (!ok) throw argument_error(message);
}

template <class Acc, class Kernel>
Acc accumulate(const ScenarioConfig& cfg, const Kernel& kernel) {
  return cfg.serial_reference ? accumulate_trials_serial<Acc>(cfg.trials, kernel)
                              : accumulate_trials<Acc>(cfg.trials, cfg.threads, kernel);
}

template <class R, class Kernel>
std::vector<R> map(const ScenarioConfig& cfg, const Kernel& kernel) {
  return cfg.serial_reference ? map_trials_serial<R>(cfg.trials, kernel) : map_trials<R>(cfg.trials, cfg.threads, kernel);
}

ValueLaw two_item_law(const ScenarioConfig& cfg) { return cfg.value_law.value_or(ValueLaw{0.0, 1.0}); }

std::pair<double, double> draw_pair(const ValueLaw& law, Stream& rng) {
  const double x1 = rng.uniform(law.lo, law.hi);
  double x2 = rng.uniform(law.lo, law.hi);
  while (x2 == x1) x2 = rng.uniform(law.lo, law.hi);
  return {x1, x2};
}

// Rows from an error-count tally against random guessing's exact error rate.
void push_error_rows(Report& report, const Tally& tally, const std::vector<std::string>& estimators,
                     const std::string& scenario, int n, int m, double gamma, std::uint64_t trials) {
  for (std::size_t k = 0; k < estimators.size(); ++k) {
    ReportRow row;
    row.scenario = scenario;
    row.estimator = estimators[k];
    row.n = n;
    row.m = m;
    row.gamma = gamma;
    row.trials = trials;
    row.error_rate = tally.mean(k, trials);
    row.std_err = tally.std_err(k, trials);
    row.rel_improvement_pct = relative_improvement(row.error_rate, kRandomGuessError);
    row.improvement_std_err = 100.0 * row.std_err / kRandomGuessError;
    report.rows.push_back(std::move(row));
  }
}

std::vector<CalibrationFunction> canonical_calibrations(std::string_view preset) {
  if (preset == "perfect") return {CalibrationFunction::identity(), CalibrationFunction::identity()};
  if (preset == "one-biased") return {CalibrationFunction::identity(), CalibrationFunction::shift(1.0)};
  throw argument_error("unknown canonical calibration preset: " + std::string(preset));
}

Tally canonical_tally(const ScenarioConfig& cfg, const std::vector<CalibrationFunction>& fs,
                      const WeightFunction& w, std::uint64_t seed) {
  const ValueLaw law = two_item_law(cfg);
  std::vector<int> roster;
  for (const auto& e : cfg.estimators) {
    roster.push_back(static_cast<int>(std::find(kCanonicalEstimators.begin(), kCanonicalEstimators.end(), e) -
                                      kCanonicalEstimators.begin()));
  }
  return accumulate<Tally>(cfg, [&](std::uint64_t trial, Tally& acc) {
    Stream rng(seed, trial);
    const auto [x1, x2] = draw_pair(law, rng);
    // Reviewer 0 rates item 0 with probability 1/2.
    const bool straight = rng.coin();
    const CalibrationFunction& f_first = fs[straight ? 0 : 1];
    const CalibrationFunction& f_second = fs[straight ? 1 : 0];
    const double y1 = evaluate(f_first, x1, cfg.noise, rng);
    const double y2 = evaluate(f_second, x2, cfg.noise, rng);
    const bool truth_first = x1 > x2;
    for (std::size_t k = 0; k < roster.size(); ++k) {
      PairOrder out;
      switch (roster[k]) {
        case 0: out = canonical_estimate(y1, y2, w, rng); break;
        case 1: out = random_guess(rng); break;
        default: out = sign_estimate_pair(y1, y2, rng); break;
      }
      acc.add(k, out.first_won() != truth_first ? 1 : 0);
    }
  });
}

struct RankingTrial {
  // Integer loss sums over the inner samples, per (estimator, loss) slot.
  std::vector<std::int64_t> sums;
  std::vector<std::int64_t> sums_sq;
};

Ranking run_ranking_estimator(const std::string& name, const Assignment& a, const ScoreSet& y, const ScenarioConfig& cfg,
                              Stream& rng) {
  if (name == "index-ties") return topological_order_index_ties(ComparisonGraph(deduce_ordinal(a, y)));
  if (name == "uniform-topological") return uniform_topological_ordering(ComparisonGraph(deduce_ordinal(a, y)), rng);
  if (name == "cardinal") return cardinal_rank_estimate(a, y, cfg.weight, rng, InitialEstimate::index_ties);
  if (name == "cardinal-uniform") return cardinal_rank_estimate(a, y, cfg.weight, rng, InitialEstimate::uniform_random);
  const MetricRankOptions options{cfg.multi_pair};
  if (name == "metric") return metric_rank_estimate(a, y, index_ties_estimator(), cfg.weight, rng, options);
  if (name == "metric-uniform") {
    return metric_rank_estimate(a, y, uniform_topological_estimator(), cfg.weight, rng, options);
  }
  throw argument_error("unknown ranking estimator: " + name);
}

int ranking_reviewers(const ScenarioConfig& cfg, int n) {
  if (!cfg.m_values.empty()) return cfg.m_values.front();
  return n * (n - 1) / 4;  // floor(C(n,2) / 2)
}

}  // namespace

std::string_view to_string(Setting s) {
  switch (s) {
    case Setting::canonical: return "canonical";
    case Setting::abtest: return "abtest";
    case Setting::ranking: return "ranking";
  }
  return "?";
}

Setting parse_setting(std::string_view name) {
  for (Setting s : {Setting::canonical, Setting::abtest, Setting::ranking}) {
    if (to_string(s) == name) return s;
  }
  throw argument_error("unknown setting: " + std::string(name));
}

const ReportRow* Report::find(std::string_view scenario, std::string_view estimator, int n, int m) const {
  for (const ReportRow& row : rows) {
    if (row.scenario == scenario && row.estimator == estimator && row.n == n && row.m == m) return &row;
  }
  return nullptr;
}

std::vector<double> default_gamma_sweep() {
  std::vector<double> gammas;
  for (int k = -10; k <= 10; ++k) gammas.push_back(std::ldexp(1.0, k));
  return gammas;
}

ScenarioConfig default_config(Setting setting) {
  ScenarioConfig cfg;
  cfg.setting = setting;
  switch (setting) {
    case Setting::canonical:
      cfg.calibration = "perfect";
      cfg.estimators = kCanonicalEstimators;
      break;
    case Setting::abtest:
      cfg.calibration = "one-biased";
      cfg.m_values = {2, 4, 6, 8};
      cfg.estimators = kAbEstimators;
      break;
    case Setting::ranking:
      cfg.calibration = "affine-uniform";
      cfg.n_values = {5};
      cfg.estimators = {"index-ties", "cardinal"};
      cfg.trials = 100;
      cfg.inner_samples = 1000;
      break;
  }
  return cfg;
}

void validate(const ScenarioConfig& cfg) {
  require(cfg.trials >= 1, "trials must be positive");
  require(cfg.inner_samples >= 1, "inner_samples must be positive");
  require(!cfg.estimators.empty(), "estimator roster is empty");
  require(cfg.estimators.size() <= Tally::kSlots / 2, "estimator roster is too long");
  if (cfg.value_law) require(cfg.value_law->lo < cfg.value_law->hi, "value law needs lo < hi");
  for (double g : cfg.gammas) require(g > 0.0 && std::isfinite(g), "gamma values must be positive");

  switch (cfg.setting) {
    case Setting::canonical:
      require(cfg.calibration == "perfect" || cfg.calibration == "one-biased",
              "canonical calibration must be perfect or one-biased");
      for (const auto& e : cfg.estimators) require(contains(kCanonicalEstimators, e), "unknown canonical estimator: " + e);
      break;
    case Setting::abtest:
      parse_ab_preset(cfg.calibration);
      require(!cfg.m_values.empty(), "abtest needs at least one reviewer count");
      for (int m : cfg.m_values) require(m >= 2 && m % 2 == 0, "abtest reviewer counts must be even and >= 2");
      for (const auto& e : cfg.estimators) parse_ab_estimator(e);
      break;
    case Setting::ranking:
      require(cfg.calibration == "affine-uniform" || cfg.calibration == "identity",
              "ranking calibration must be affine-uniform or identity");
      require(cfg.noise.is_none(), "ranking estimators take noiseless scores only");
      require(!cfg.n_values.empty(), "ranking needs at least one item count");
      require(cfg.m_values.size() <= 1, "ranking accepts at most one reviewer-count override");
      require(!cfg.losses.empty(), "ranking needs at least one loss");
      require(cfg.estimators.size() * cfg.losses.size() + cfg.losses.size() <= Tally::kSlots,
              "too many (estimator, loss) combinations");
      for (int n : cfg.n_values) {
        require(n >= 3 && n <= 20, "ranking item counts must lie in [3, 20]");
        const int m = ranking_reviewers(cfg, n);
        require(m > 1 && m < n * (n - 1) / 2, "ranking reviewer count must satisfy 1 < m < C(n,2) for n = " +
                                                  std::to_string(n));
      }
      for (const auto& e : cfg.estimators) require(contains(kRankingEstimators, e), "unknown ranking estimator: " + e);
      break;
  }
}

std::vector<CalibrationFunction> ranking_calibrations(std::string_view preset, int reviewers, Stream& rng) {
  std::vector<CalibrationFunction> fs;
  fs.reserve(static_cast<std::size_t>(reviewers));
  for (int j = 0; j < reviewers; ++j) {
    if (preset == "identity") {
      fs.push_back(CalibrationFunction::identity());
    } else if (preset == "affine-uniform") {
      double slope = rng.uniform();
      while (slope == 0.0) slope = rng.uniform();
      fs.push_back(CalibrationFunction::affine(slope, rng.uniform()));
    } else {
      throw argument_error("unknown ranking calibration preset: " + std::string(preset));
    }
  }
  return fs;
}

Report run_canonical_scenario(const ScenarioConfig& cfg) {
  require(cfg.setting == Setting::canonical, "run_canonical_scenario needs a canonical config");
  validate(cfg);
  const Tally tally = canonical_tally(cfg, canonical_calibrations(cfg.calibration), cfg.weight, point_seed(cfg.seed, 0));
  Report report;
  push_error_rows(report, tally, cfg.estimators, cfg.calibration, 2, 2, gamma_of(cfg.weight), cfg.trials);
  return report;
}

Report run_abtest_scenario(const ScenarioConfig& cfg) {
  require(cfg.setting == Setting::abtest, "run_abtest_scenario needs an abtest config");
  validate(cfg);
  const AbPreset preset = parse_ab_preset(cfg.calibration);
  const ValueLaw law = two_item_law(cfg);
  std::vector<AbEstimator> roster;
  for (const auto& e : cfg.estimators) roster.push_back(parse_ab_estimator(e));

  Report report;
  for (std::size_t point = 0; point < cfg.m_values.size(); ++point) {
    const int m = cfg.m_values[point];
    const std::vector<CalibrationFunction> fs = ab_calibrations(preset, m);
    const std::uint64_t seed = point_seed(cfg.seed, point);
    const Tally tally = accumulate<Tally>(cfg, [&](std::uint64_t trial, Tally& acc) {
      Stream rng(seed, trial);
      const auto [x1, x2] = draw_pair(law, rng);
      const AbScores scores = observe_ab(assign_ab(m, rng), x1, x2, fs, cfg.noise, rng);
      const bool truth_first = x1 > x2;
      for (std::size_t k = 0; k < roster.size(); ++k) {
        acc.add(k, run_ab_estimator(roster[k], scores, cfg.weight, rng).first_won() != truth_first ? 1 : 0);
      }
    });
    push_error_rows(report, tally, cfg.estimators, cfg.calibration, 2, m, gamma_of(cfg.weight), cfg.trials);
  }
  return report;
}

Report run_ranking_experiment(const ScenarioConfig& cfg) {
  require(cfg.setting == Setting::ranking, "run_ranking_experiment needs a ranking config");
  validate(cfg);
  // Slot layout: [loss][estimator], then one baseline slot per loss.
  const std::size_t estimators = cfg.estimators.size();
  const std::size_t losses = cfg.losses.size();
  const std::size_t slots = estimators * losses + losses;
  auto slot = [&](std::size_t loss_index, std::size_t estimator) { return loss_index * estimators + estimator; };
  auto baseline_slot = [&](std::size_t loss_index) { return estimators * losses + loss_index; };

  Report report;
  for (std::size_t point = 0; point < cfg.n_values.size(); ++point) {
    const int n = cfg.n_values[point];
    const int m = ranking_reviewers(cfg, n);
    const ValueLaw law = cfg.value_law.value_or(ValueLaw{0.0, static_cast<double>(n)});
    const std::uint64_t seed = point_seed(cfg.seed, point);

    const std::vector<RankingTrial> trials = map<RankingTrial>(cfg, [&](std::uint64_t trial) {
      Stream outer(seed, trial, 0);
      std::vector<double> xs(static_cast<std::size_t>(n));
      do {
        for (double& x : xs) x = outer.uniform(law.lo, law.hi);
        std::vector<double> sorted = xs;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end()) break;
      } while (true);
      const ItemValues values(xs);
      const Ranking truth = induced_ranking(values);
      const std::vector<CalibrationFunction> fs = ranking_calibrations(cfg.calibration, m, outer);

      RankingTrial result{std::vector<std::int64_t>(slots, 0), std::vector<std::int64_t>(slots, 0)};
      auto record = [&](std::size_t s, double value) {
        const auto v = static_cast<std::int64_t>(value);
        result.sums[s] += v;
        result.sums_sq[s] += v * v;
      };
      for (std::uint64_t sample = 0; sample < cfg.inner_samples; ++sample) {
        Stream rng(seed, trial, sample + 1);
        const Assignment a = assign_pairs(n, m, rng);
        const ScoreSet y = observe(a, values, fs, NoiseModel::none(), rng);
        const Ranking baseline = topological_order_index_ties(ComparisonGraph(deduce_ordinal(a, y)));
        for (std::size_t l = 0; l < losses; ++l) record(baseline_slot(l), loss(cfg.losses[l], truth, baseline));
        for (std::size_t e = 0; e < estimators; ++e) {
          const Ranking estimate = run_ranking_estimator(cfg.estimators[e], a, y, cfg, rng);
          for (std::size_t l = 0; l < losses; ++l) record(slot(l, e), loss(cfg.losses[l], truth, estimate));
        }
      }
      return result;
    });

    const auto inner = static_cast<double>(cfg.inner_samples);
    const auto outer_count = static_cast<double>(cfg.trials);
    for (std::size_t l = 0; l < losses; ++l) {
      for (std::size_t e = 0; e < estimators; ++e) {
        const std::size_t s = slot(l, e);
        double total = 0.0, total_sq = 0.0;
        double mean_sum = 0.0, mean_sq_sum = 0.0;
        double imp_sum = 0.0, imp_sq_sum = 0.0;
        std::size_t imp_count = 0;
        for (const RankingTrial& t : trials) {
          total += static_cast<double>(t.sums[s]);
          total_sq += static_cast<double>(t.sums_sq[s]);
          const double trial_mean = static_cast<double>(t.sums[s]) / inner;
          mean_sum += trial_mean;
          mean_sq_sum += trial_mean * trial_mean;
          const double base_mean = static_cast<double>(t.sums[baseline_slot(l)]) / inner;
          // A trial whose baseline never errs has no defined improvement.
          if (base_mean > 0.0) {
            const double imp = relative_improvement(trial_mean, base_mean);
            imp_sum += imp;
            imp_sq_sum += imp * imp;
            ++imp_count;
          }
        }
        ReportRow row;
        row.scenario = cfg.calibration + "/" + std::string(to_string(cfg.losses[l]));
        row.estimator = cfg.estimators[e];
        row.n = n;
        row.m = m;
        row.gamma = gamma_of(cfg.weight);
        row.trials = cfg.trials * cfg.inner_samples;
        const double samples = outer_count * inner;
        row.error_rate = total / samples;
        if (cfg.trials > 1) {
          const double var = (mean_sq_sum - mean_sum * mean_sum / outer_count) / (outer_count - 1.0);
          row.std_err = std::sqrt(std::max(var, 0.0) / outer_count);
        } else if (samples > 1) {
          const double var = (total_sq - total * total / samples) / (samples - 1.0);
          row.std_err = std::sqrt(std::max(var, 0.0) / samples);
        }
        if (imp_count > 0) {
          const auto k = static_cast<double>(imp_count);
          row.rel_improvement_pct = imp_sum / k;
          if (imp_count > 1) {
            const double var = (imp_sq_sum - imp_sum * imp_sum / k) / (k - 1.0);
            row.improvement_std_err = std::sqrt(std::max(var, 0.0) / k);
          }
        }
        report.rows.push_back(std::move(row));
      }
    }
  }
  return report;
}

Report run_tradeoff_sweep(const ScenarioConfig& cfg) {
  require(cfg.setting == Setting::canonical, "run_tradeoff_sweep needs a canonical config");
  ScenarioConfig point_cfg = cfg;
  point_cfg.estimators = {"canonical"};
  validate(point_cfg);
  const std::vector<double> gammas = cfg.gammas.empty() ? default_gamma_sweep() : cfg.gammas;
  const std::array<std::string, 2> regimes{"perfect", "one-biased"};

  Report report;
  for (std::size_t r = 0; r < regimes.size(); ++r) {
    const std::vector<CalibrationFunction> fs = canonical_calibrations(regimes[r]);
    // Same trial streams at every gamma, so the curve is drawn with common random numbers.
    const std::uint64_t seed = point_seed(cfg.seed, r);
    for (double gamma : gammas) {
      const Tally tally = canonical_tally(point_cfg, fs, WeightFunction::ratio(gamma), seed);
      push_error_rows(report, tally, point_cfg.estimators, regimes[r], 2, 2, gamma, cfg.trials);
    }
  }
  return report;
}

}  // namespace calrank
