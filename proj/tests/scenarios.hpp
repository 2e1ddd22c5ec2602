#pragma once

// Randomized two-item scenarios drawn from the calibration constructor
// families, shared by the canonical tests and the acceptance run.

#include <algorithm>
#include <cmath>
#include <vector>

#include "calrank/canonical.hpp"
#include "calrank/model.hpp"
#include "calrank/random.hpp"
#include "calrank/trials.hpp"

namespace scenarios {

inline calrank::CalibrationFunction random_calibration(calrank::Stream& rng) {
  using calrank::CalibrationFunction;
  switch (rng.below(4)) {
    case 0: return CalibrationFunction::identity();
    case 1: return CalibrationFunction::shift(rng.uniform(-1, 1));
    case 2: return CalibrationFunction::affine(rng.uniform(0.5, 2), rng.uniform(-1, 1));
    default: {
      // Three segments with slopes in [0.25, 4].
      std::vector<calrank::Knot> knots{{-1.0, rng.uniform(-1, 1)}};
      for (double x : {0.0, 0.5, 2.0}) {
        const double slope = std::exp2(rng.uniform(-2, 2));
        knots.push_back({x, knots.back().output + slope * (x - knots.back().input)});
      }
      return CalibrationFunction::piecewise_linear(std::move(knots));
    }
  }
}

inline calrank::WeightFunction random_weight(calrank::Stream& rng) {
  if (rng.below(4) == 0) return calrank::WeightFunction::logistic();
  return calrank::WeightFunction::ratio(std::exp2(rng.uniform(-1, 2)));
}

struct TwoItem {
  double x1;
  double x2;
  calrank::CalibrationFunction f1;
  calrank::CalibrationFunction f2;
  calrank::WeightFunction w;
};

// Item values on U(0, 1) at least 0.2 apart.
inline TwoItem random_two_item(calrank::Stream& rng) {
  double x1 = 0, x2 = 0;
  do {
    x1 = rng.uniform();
    x2 = rng.uniform();
  } while (std::abs(x1 - x2) < 0.2);
  return {x1, x2, random_calibration(rng), random_calibration(rng), random_weight(rng)};
}

// Successes of the canonical estimator over `trials` draws of the reviewer
// assignment, the noise and the estimator's own coin.
inline std::int64_t simulate_canonical(const TwoItem& s, const calrank::NoiseModel& noise, std::uint64_t trials,
                                       std::uint64_t seed) {
  const calrank::Tally tally = calrank::accumulate_trials<calrank::Tally>(
      trials, 0, [&](std::uint64_t t, calrank::Tally& acc) {
        calrank::Stream rng(seed, t);
        const bool straight = rng.coin();
        const double y1 = calrank::evaluate(straight ? s.f1 : s.f2, s.x1, noise, rng);
        const double y2 = calrank::evaluate(straight ? s.f2 : s.f1, s.x2, noise, rng);
        acc.add(0, calrank::canonical_estimate(y1, y2, s.w, rng).first_won() == (s.x1 > s.x2));
      });
  return tally.sum[0];
}

struct RankingInstance {
  calrank::ItemValues values;
  calrank::Assignment assignment;
  calrank::ScoreSet scores;
};

// n items with values on U(0, n), a random reviewer count in (1, C(n,2)) and
// random calibrations from the constructor families.
inline RankingInstance random_ranking_instance(int n, calrank::Stream& rng) {
  std::vector<double> xs(static_cast<std::size_t>(n));
  for (double& x : xs) x = rng.uniform(0, n);
  calrank::ItemValues values(xs);
  const int pairs = n * (n - 1) / 2;
  const int m = 2 + static_cast<int>(rng.below(static_cast<std::size_t>(pairs - 2)));
  calrank::Assignment a = calrank::assign_pairs(n, m, rng);
  std::vector<calrank::CalibrationFunction> fs;
  for (int j = 0; j < m; ++j) fs.push_back(random_calibration(rng));
  calrank::ScoreSet y = calrank::observe(a, values, fs, calrank::NoiseModel::none(), rng);
  return {std::move(values), std::move(a), std::move(y)};
}

}  // namespace scenarios
