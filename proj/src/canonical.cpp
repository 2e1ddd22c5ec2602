#include "calrank/canonical.hpp"

#include <cmath>

#include "calrank/error.hpp"

namespace calrank {

double w_tilde(const WeightFunction& w, double x) {
  if (x > 0.0) return 0.5 * (1.0 + w(x));
  if (x < 0.0) return 0.5 * (1.0 - w(-x));
  return 0.5;
}

PairOrder canonical_estimate(double y1, double y2, const WeightFunction& w, Stream& rng) {
  bool first_leads = y1 > y2;
  if (y1 == y2) first_leads = rng.coin();
  const bool follow_leader = rng.bernoulli(0.5 * (1.0 + w(std::fabs(y1 - y2))));
  return first_leads == follow_leader ? PairOrder::first_wins() : PairOrder::second_wins();
}

double canonical_success_probability(double x1, double x2, const CalibrationFunction& f1,
                                     const CalibrationFunction& f2, const WeightFunction& w) {
  if (x1 == x2) {
    throw argument_error("canonical_success_probability: item values must differ");
  }
  // Probability of outputting "item 0 first" averaged over both assignments.
  const double first_wins = 0.5 * (1.0 + w_tilde(w, f1(x1) - f2(x2)) - w_tilde(w, f1(x2) - f2(x1)));
  return x1 > x2 ? first_wins : 1.0 - first_wins;
}

PairOrder random_guess(Stream& rng) {
  return rng.coin() ? PairOrder::first_wins() : PairOrder::second_wins();
}

PairOrder sign_estimate_pair(double y1, double y2, Stream& rng) {
  if (y1 > y2) return PairOrder::first_wins();
  if (y2 > y1) return PairOrder::second_wins();
  return random_guess(rng);
}

}  // namespace calrank
