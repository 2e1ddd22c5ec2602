#pragma once

// A/B testing with m reviewers: sign, mean and median baselines, the
// majority vote over per-pair canonical estimates, and an exact
// enumeration oracle over reviewer permutations.

#include <span>
#include <string_view>
#include <vector>

#include "calrank/canonical.hpp"
#include "calrank/model.hpp"

namespace calrank {

// Scores in permuted-reviewer order; (first[j], second[j]) is voting pair j.
class AbScores {
 public:
  AbScores(std::vector<double> first, std::vector<double> second);

  int pairs() const { return static_cast<int>(first_.size()); }
  std::span<const double> first() const { return first_; }
  std::span<const double> second() const { return second_; }

 private:
  std::vector<double> first_;
  std::vector<double> second_;
};

enum class AbEstimator { random_guess, sign, mean, median, majority };

std::string_view to_string(AbEstimator e);
AbEstimator parse_ab_estimator(std::string_view name);

// Named calibration families for m reviewers.
enum class AbPreset {
  one_biased,              // f_j = x for j < m, f_m = x + m
  incremental,             // f_j = x + j
  incremental_plus_biased  // f_j = x + (j - 1) for j < m, f_m = x + m(m - 1)/2
};

std::string_view to_string(AbPreset p);
AbPreset parse_ab_preset(std::string_view name);
std::vector<CalibrationFunction> ab_calibrations(AbPreset preset, int reviewers);

// Scores of the assignment: first half of reviewer_order rates item 0.
AbScores observe_ab(const AbAssignment& assignment, double x1, double x2,
                    std::span<const CalibrationFunction> calibrations, const NoiseModel& noise,
                    Stream& rng);

// a_{floor((n+1)/2)} of the values sorted descending (1-based).
double upper_median(std::span<const double> values);

PairOrder sign_estimator(const AbScores& scores, Stream& rng);
PairOrder mean_estimator(const AbScores& scores, Stream& rng);
PairOrder median_estimator(const AbScores& scores, Stream& rng);
PairOrder majority_cardinal_estimator(const AbScores& scores, const WeightFunction& w, Stream& rng);

PairOrder run_ab_estimator(AbEstimator e, const AbScores& scores, const WeightFunction& w, Stream& rng);

// Exact success probability summed over all m! equally likely reviewer
// permutations. Noiseless. m must be even and at most 8.
double exact_abtest_success(double x1, double x2, std::span<const CalibrationFunction> calibrations,
                            const WeightFunction& w, AbEstimator estimator);

}  // namespace calrank
