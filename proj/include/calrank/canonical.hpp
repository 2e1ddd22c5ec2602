#pragma once

// The two-item, two-reviewer randomized estimator and its baselines.

#include "calrank/model.hpp"
#include "calrank/random.hpp"

namespace calrank {

// Outcome of a two-item comparison; items are 0 and 1.
struct PairOrder {
  int winner;
  int loser;

  static PairOrder first_wins() { return {0, 1}; }
  static PairOrder second_wins() { return {1, 0}; }
  bool first_won() const { return winner == 0; }
  bool operator==(const PairOrder&) const = default;
};

// (1 + w(x)) / 2 for x > 0, 1/2 at 0, (1 - w(-x)) / 2 for x < 0.
double w_tilde(const WeightFunction& w, double x);

// Follows the higher score with probability (1 + w(|y1 - y2|)) / 2. A score
// tie picks the nominal leader with a fair coin first, which makes both
// orders exactly equally likely.
PairOrder canonical_estimate(double y1, double y2, const WeightFunction& w, Stream& rng);

// Exact success probability of canonical_estimate over the two equally likely
// reviewer assignments:
//   1/2 [1 + w~(f1(x1) - f2(x2)) - w~(f1(x2) - f2(x1))]   when x1 > x2,
// and its complement when x1 < x2. Throws argument_error if x1 == x2.
double canonical_success_probability(double x1, double x2, const CalibrationFunction& f1,
                                     const CalibrationFunction& f2, const WeightFunction& w);

PairOrder random_guess(Stream& rng);

// Deterministic follow-the-higher-score rule; ties by fair coin.
PairOrder sign_estimate_pair(double y1, double y2, Stream& rng);

}  // namespace calrank
