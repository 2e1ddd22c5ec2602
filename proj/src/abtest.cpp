#include "calrank/abtest.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <string>

#include "calrank/error.hpp"

namespace calrank {

namespace {

constexpr int kMaxExactReviewers = 8;

double mean_of(std::span<const double> values) {
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

// Probability that item 0 is output first when the deterministic statistics
// compare as a vs b, with a fair coin on equality.
double compare_probability(double a, double b) {
  if (a > b) return 1.0;
  if (a < b) return 0.0;
  return 0.5;
}

PairOrder from_statistics(double a, double b, Stream& rng) {
  if (a > b) return PairOrder::first_wins();
  if (a < b) return PairOrder::second_wins();
  return random_guess(rng);
}

std::array<int, 2> pairwise_wins(std::span<const double> first, std::span<const double> second) {
  std::array<int, 2> wins{0, 0};
  for (std::size_t j = 0; j < first.size(); ++j) {
    if (first[j] > second[j]) ++wins[0];
    if (second[j] > first[j]) ++wins[1];
  }
  return wins;
}

// P(strict majority for item 0) + 1/2 P(even split), per-pair success
// probabilities independent.
double majority_probability(std::span<const double> first, std::span<const double> second,
                            const WeightFunction& w) {
  const std::size_t k = first.size();
  std::array<double, kMaxExactReviewers / 2 + 1> dist{};
  dist[0] = 1.0;
  for (std::size_t j = 0; j < k; ++j) {
    const double p = w_tilde(w, first[j] - second[j]);
    for (std::size_t v = j + 1; v > 0; --v) dist[v] = dist[v] * (1.0 - p) + dist[v - 1] * p;
    dist[0] *= 1.0 - p;
  }
  double result = 0.0;
  for (std::size_t v = 0; v <= k; ++v) {
    if (2 * v > k) result += dist[v];
    if (2 * v == k) result += 0.5 * dist[v];
  }
  return result;
}

}  // namespace

AbScores::AbScores(std::vector<double> first, std::vector<double> second)
    : first_(std::move(first)), second_(std::move(second)) {
  if (first_.empty() || first_.size() != second_.size()) {
    throw invariant_error("AbScores: both items need the same non-zero number of scores");
  }
}

std::string_view to_string(AbEstimator e) {
  switch (e) {
    case AbEstimator::random_guess: return "random";
    case AbEstimator::sign: return "sign";
    case AbEstimator::mean: return "mean";
    case AbEstimator::median: return "median";
    case AbEstimator::majority: return "majority";
  }
  return "?";
}

AbEstimator parse_ab_estimator(std::string_view name) {
  for (AbEstimator e : {AbEstimator::random_guess, AbEstimator::sign, AbEstimator::mean,
                        AbEstimator::median, AbEstimator::majority}) {
    if (to_string(e) == name) return e;
  }
  throw argument_error("unknown A/B estimator: " + std::string(name));
}

std::string_view to_string(AbPreset p) {
  switch (p) {
    case AbPreset::one_biased: return "one-biased";
    case AbPreset::incremental: return "incremental";
    case AbPreset::incremental_plus_biased: return "incremental-plus-biased";
  }
  return "?";
}

AbPreset parse_ab_preset(std::string_view name) {
  for (AbPreset p : {AbPreset::one_biased, AbPreset::incremental, AbPreset::incremental_plus_biased}) {
    if (to_string(p) == name) return p;
  }
  throw argument_error("unknown A/B scenario preset: " + std::string(name));
}

std::vector<CalibrationFunction> ab_calibrations(AbPreset preset, int reviewers) {
  if (reviewers < 2) {
    throw argument_error("ab_calibrations: need at least two reviewers");
  }
  const double m = reviewers;
  std::vector<CalibrationFunction> fs;
  fs.reserve(static_cast<std::size_t>(reviewers));
  for (int j = 1; j <= reviewers; ++j) {
    const bool last = j == reviewers;
    switch (preset) {
      case AbPreset::one_biased:
        fs.push_back(last ? CalibrationFunction::shift(m) : CalibrationFunction::identity());
        break;
      case AbPreset::incremental:
        fs.push_back(CalibrationFunction::shift(j));
        break;
      case AbPreset::incremental_plus_biased:
        fs.push_back(CalibrationFunction::shift(last ? m * (m - 1) / 2 : j - 1));
        break;
    }
  }
  return fs;
}

AbScores observe_ab(const AbAssignment& assignment, double x1, double x2,
                    std::span<const CalibrationFunction> calibrations, const NoiseModel& noise,
                    Stream& rng) {
  if (calibrations.size() != assignment.reviewer_order.size()) {
    throw argument_error("observe_ab: need one calibration function per reviewer");
  }
  const auto h = static_cast<std::size_t>(assignment.half());
  std::vector<double> first(h), second(h);
  for (std::size_t j = 0; j < h; ++j) {
    const auto r1 = static_cast<std::size_t>(assignment.reviewer_order[j]);
    const auto r2 = static_cast<std::size_t>(assignment.reviewer_order[h + j]);
    first[j] = evaluate(calibrations[r1], x1, noise, rng);
    second[j] = evaluate(calibrations[r2], x2, noise, rng);
  }
  return AbScores(std::move(first), std::move(second));
}

double upper_median(std::span<const double> values) {
  if (values.empty()) {
    throw argument_error("upper_median: empty input");
  }
  std::vector<double> sorted(values.begin(), values.end());
  // Descending a_1 >= ... >= a_n; the upper median is a_{floor((n+1)/2)}.
  const std::size_t idx = (sorted.size() + 1) / 2 - 1;
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(idx), sorted.end(),
                   std::greater<>());
  return sorted[idx];
}

PairOrder sign_estimator(const AbScores& scores, Stream& rng) {
  const auto wins = pairwise_wins(scores.first(), scores.second());
  return from_statistics(wins[0], wins[1], rng);
}

PairOrder mean_estimator(const AbScores& scores, Stream& rng) {
  return from_statistics(mean_of(scores.first()), mean_of(scores.second()), rng);
}

PairOrder median_estimator(const AbScores& scores, Stream& rng) {
  return from_statistics(upper_median(scores.first()), upper_median(scores.second()), rng);
}

PairOrder majority_cardinal_estimator(const AbScores& scores, const WeightFunction& w, Stream& rng) {
  int votes_first = 0;
  for (int j = 0; j < scores.pairs(); ++j) {
    const auto k = static_cast<std::size_t>(j);
    if (canonical_estimate(scores.first()[k], scores.second()[k], w, rng).first_won()) ++votes_first;
  }
  return from_statistics(votes_first, scores.pairs() - votes_first, rng);
}

PairOrder run_ab_estimator(AbEstimator e, const AbScores& scores, const WeightFunction& w, Stream& rng) {
  switch (e) {
    case AbEstimator::random_guess: return random_guess(rng);
    case AbEstimator::sign: return sign_estimator(scores, rng);
    case AbEstimator::mean: return mean_estimator(scores, rng);
    case AbEstimator::median: return median_estimator(scores, rng);
    case AbEstimator::majority: return majority_cardinal_estimator(scores, w, rng);
  }
  throw argument_error("run_ab_estimator: unknown estimator");
}

double exact_abtest_success(double x1, double x2, std::span<const CalibrationFunction> calibrations,
                            const WeightFunction& w, AbEstimator estimator) {
  const int m = static_cast<int>(calibrations.size());
  if (m > kMaxExactReviewers) {
    throw capacity_error("exact_abtest_success: enumeration is limited to 8 reviewers");
  }
  if (m < 2 || m % 2 != 0) {
    throw argument_error("exact_abtest_success: reviewer count must be even and at least 2");
  }
  if (x1 == x2) {
    throw argument_error("exact_abtest_success: item values must differ");
  }
  const auto h = static_cast<std::size_t>(m / 2);
  std::vector<double> on_first(calibrations.size()), on_second(calibrations.size());
  for (std::size_t r = 0; r < calibrations.size(); ++r) {
    on_first[r] = calibrations[r](x1);
    on_second[r] = calibrations[r](x2);
  }

  std::vector<int> perm(calibrations.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<double> first(h), second(h);
  double total = 0.0;
  long long count = 0;
  do {
    for (std::size_t j = 0; j < h; ++j) {
      first[j] = on_first[static_cast<std::size_t>(perm[j])];
      second[j] = on_second[static_cast<std::size_t>(perm[h + j])];
    }
    double p = 0.5;
    switch (estimator) {
      case AbEstimator::random_guess:
        break;
      case AbEstimator::sign: {
        const auto wins = pairwise_wins(first, second);
        p = compare_probability(wins[0], wins[1]);
        break;
      }
      case AbEstimator::mean:
        p = compare_probability(mean_of(first), mean_of(second));
        break;
      case AbEstimator::median:
        p = compare_probability(upper_median(first), upper_median(second));
        break;
      case AbEstimator::majority:
        p = majority_probability(first, second, w);
        break;
    }
    total += p;
    ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));

  const double first_wins = total / static_cast<double>(count);
  return x1 > x2 ? first_wins : 1.0 - first_wins;
}

}  // namespace calrank
