#include "calrank/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <utility>

#include "calrank/error.hpp"

namespace calrank {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_strictly_ascending(const std::vector<Knot>& knots, const char* what) {
  for (std::size_t k = 1; k < knots.size(); ++k) {
    if (!(knots[k].input > knots[k - 1].input) || !(knots[k].output > knots[k - 1].output)) {
      throw invariant_error(std::string(what) + ": knots must be strictly ascending in both coordinates");
    }
  }
}

double interpolate(const Knot& a, const Knot& b, double x) {
  const double slope = (b.output - a.output) / (b.input - a.input);
  return a.output + slope * (x - a.input);
}

std::vector<int> invert(const std::vector<int>& perm, const char* what) {
  const std::size_t n = perm.size();
  std::vector<int> inverse(n, -1);
  for (std::size_t k = 0; k < n; ++k) {
    const int v = perm[k];
    if (v < 0 || static_cast<std::size_t>(v) >= n || inverse[static_cast<std::size_t>(v)] != -1) {
      throw invariant_error(std::string(what) + " is not a permutation of 0..n-1");
    }
    inverse[static_cast<std::size_t>(v)] = static_cast<int>(k);
  }
  return inverse;
}

}  // namespace

ItemValues::ItemValues(std::vector<double> values) : values_(std::move(values)) {
  if (values_.size() < 2) {
    throw invariant_error("ItemValues: need at least two items");
  }
  std::vector<double> sorted = values_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw invariant_error("ItemValues: item values must be pairwise distinct");
  }
}

CalibrationFunction CalibrationFunction::shift(double offset) {
  if (!std::isfinite(offset)) {
    throw invariant_error("shift calibration: offset must be finite");
  }
  return CalibrationFunction(Shift{offset});
}

CalibrationFunction CalibrationFunction::affine(double slope, double intercept) {
  if (!(slope > 0.0) || !std::isfinite(slope) || !std::isfinite(intercept)) {
    throw invariant_error("affine calibration: slope must be positive and finite");
  }
  return CalibrationFunction(Affine{slope, intercept});
}

CalibrationFunction CalibrationFunction::piecewise_linear(std::vector<Knot> knots) {
  if (knots.size() < 2) {
    throw invariant_error("piecewise-linear calibration: need at least two knots");
  }
  require_strictly_ascending(knots, "piecewise-linear calibration");
  return CalibrationFunction(PiecewiseLinear{std::move(knots)});
}

double CalibrationFunction::operator()(double x) const {
  return std::visit(
      overloaded{
          [x](const Identity&) { return x; },
          [x](const Shift& s) { return x + s.offset; },
          [x](const Affine& a) { return a.slope * x + a.intercept; },
          [x](const PiecewiseLinear& p) {
            const auto& k = p.knots;
            if (x <= k.front().input) return interpolate(k[0], k[1], x);
            if (x >= k.back().input) return interpolate(k[k.size() - 2], k.back(), x);
            auto hi = std::upper_bound(k.begin(), k.end(), x,
                                       [](double v, const Knot& knot) { return v < knot.input; });
            return interpolate(*(hi - 1), *hi, x);
          },
      },
      form_);
}

std::string CalibrationFunction::describe() const {
  std::ostringstream out;
  std::visit(overloaded{
                 [&](const Identity&) { out << "identity"; },
                 [&](const Shift& s) { out << "shift(" << s.offset << ")"; },
                 [&](const Affine& a) { out << "affine(" << a.slope << "," << a.intercept << ")"; },
                 [&](const PiecewiseLinear& p) { out << "piecewise-linear[" << p.knots.size() << "]"; },
             },
             form_);
  return out.str();
}

NoiseModel NoiseModel::gaussian(double sigma) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw invariant_error("gaussian noise: sigma must be >= 0");
  }
  return NoiseModel(Gaussian{sigma});
}

NoiseModel NoiseModel::uniform(double half_width) {
  if (!(half_width >= 0.0) || !std::isfinite(half_width)) {
    throw invariant_error("uniform noise: half width must be >= 0");
  }
  return NoiseModel(Uniform{half_width});
}

double NoiseModel::draw(Stream& rng) const {
  return std::visit(overloaded{
                        [](const None&) { return 0.0; },
                        [&rng](const Gaussian& g) {
                          std::normal_distribution<double> normal(0.0, g.sigma);
                          return normal(rng);
                        },
                        [&rng](const Uniform& u) { return rng.uniform(-u.half_width, u.half_width); },
                    },
                    form_);
}

std::string NoiseModel::describe() const {
  std::ostringstream out;
  std::visit(overloaded{
                 [&](const None&) { out << "none"; },
                 [&](const Gaussian& g) { out << "gaussian(" << g.sigma << ")"; },
                 [&](const Uniform& u) { out << "uniform(" << u.half_width << ")"; },
             },
             form_);
  return out.str();
}

WeightFunction WeightFunction::ratio(double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw invariant_error("ratio weight: gamma must be positive");
  }
  return WeightFunction(Ratio{gamma});
}

WeightFunction WeightFunction::table(std::vector<Knot> samples) {
  if (samples.size() < 2) {
    throw invariant_error("weight table: need at least two samples");
  }
  if (samples.front().input != 0.0) {
    throw invariant_error("weight table: first sample must be at input 0");
  }
  require_strictly_ascending(samples, "weight table");
  if (samples.front().output < 0.0 || samples.back().output >= 1.0) {
    throw invariant_error("weight table: outputs must lie in [0, 1)");
  }
  return WeightFunction(Table{std::move(samples)});
}

double WeightFunction::operator()(double x) const {
  if (!(x >= 0.0)) {
    throw argument_error("weight function: argument must be non-negative");
  }
  return std::visit(overloaded{
                        [x](const Ratio& r) {
                          if (std::isinf(x)) return 1.0;
                          const double gx = r.gamma * x;
                          return gx / (1.0 + gx);
                        },
                        // 2 / (1 + e^{-x}) - 1 == tanh(x / 2), without cancellation near 0.
                        [x](const Logistic&) { return std::tanh(0.5 * x); },
                        [x](const Table& t) {
                          const auto& s = t.samples;
                          const Knot& last = s.back();
                          if (x >= last.input) return 1.0 - (1.0 - last.output) * last.input / x;
                          auto hi = std::upper_bound(s.begin(), s.end(), x,
                                                     [](double v, const Knot& k) { return v < k.input; });
                          return interpolate(*(hi - 1), *hi, x);
                        },
                    },
                    form_);
}

std::string WeightFunction::describe() const {
  std::ostringstream out;
  std::visit(overloaded{
                 [&](const Ratio& r) { out << "ratio(" << r.gamma << ")"; },
                 [&](const Logistic&) { out << "logistic"; },
                 [&](const Table& t) { out << "table[" << t.samples.size() << "]"; },
             },
             form_);
  return out.str();
}

Assignment AbAssignment::assignment() const {
  Assignment a;
  a.item_count = 2;
  a.per_reviewer.resize(reviewer_order.size());
  const int h = half();
  for (int k = 0; k < reviewer_count(); ++k) {
    a.per_reviewer[static_cast<std::size_t>(reviewer_order[static_cast<std::size_t>(k)])] = {k < h ? 0 : 1};
  }
  return a;
}

Ranking Ranking::from_order(std::vector<int> item_at_rank) {
  std::vector<int> ranks = invert(item_at_rank, "item_at_rank");
  return Ranking(std::move(item_at_rank), std::move(ranks));
}

Ranking Ranking::from_ranks(std::vector<int> rank_of_item) {
  std::vector<int> order = invert(rank_of_item, "rank_of_item");
  return Ranking(std::move(order), std::move(rank_of_item));
}

Ranking Ranking::identity(int n) {
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  return Ranking(order, order);
}

Ranking Ranking::swapped(int rank_a, int rank_b) const {
  Ranking out = *this;
  auto a = static_cast<std::size_t>(rank_a);
  auto b = static_cast<std::size_t>(rank_b);
  std::swap(out.item_at_rank_[a], out.item_at_rank_[b]);
  out.rank_of_item_[static_cast<std::size_t>(out.item_at_rank_[a])] = rank_a;
  out.rank_of_item_[static_cast<std::size_t>(out.item_at_rank_[b])] = rank_b;
  return out;
}

OrdinalObservations::OrdinalObservations(int item_count, std::vector<Comparison> comparisons)
    : item_count_(item_count), comparisons_(std::move(comparisons)) {
  std::set<std::pair<int, int>> seen;
  for (const Comparison& c : comparisons_) {
    if (c.winner < 0 || c.winner >= item_count_ || c.loser < 0 || c.loser >= item_count_ ||
        c.winner == c.loser) {
      throw invariant_error("OrdinalObservations: comparison refers to an invalid item pair");
    }
    if (!seen.emplace(std::min(c.winner, c.loser), std::max(c.winner, c.loser)).second) {
      throw invariant_error("OrdinalObservations: pair compared twice");
    }
  }
}

Ranking induced_ranking(const ItemValues& values) {
  std::vector<int> order(static_cast<std::size_t>(values.size()));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return values[a] > values[b]; });
  return Ranking::from_order(std::move(order));
}

double evaluate(const CalibrationFunction& f, double x, const NoiseModel& noise, Stream& rng) {
  if (noise.is_none()) return f(x);
  return f(x) + noise.draw(rng);
}

AbAssignment assign_ab(int reviewers, Stream& rng) {
  if (reviewers < 2 || reviewers % 2 != 0) {
    throw argument_error("assign_ab: reviewer count must be even and at least 2");
  }
  AbAssignment a;
  a.reviewer_order.resize(static_cast<std::size_t>(reviewers));
  std::iota(a.reviewer_order.begin(), a.reviewer_order.end(), 0);
  std::shuffle(a.reviewer_order.begin(), a.reviewer_order.end(), rng);
  return a;
}

Assignment assign_pairs(int items, int reviewers, Stream& rng) {
  if (items < 2) {
    throw argument_error("assign_pairs: need at least two items");
  }
  const long long total = static_cast<long long>(items) * (items - 1) / 2;
  if (reviewers <= 1 || reviewers >= total) {
    throw argument_error("assign_pairs: reviewer count must satisfy 1 < m < C(n,2)");
  }
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(static_cast<std::size_t>(total));
  for (int i = 0; i < items; ++i) {
    for (int j = i + 1; j < items; ++j) pairs.emplace_back(i, j);
  }
  // Partial Fisher-Yates: the first m slots are a uniform ordered m-subset.
  Assignment a;
  a.item_count = items;
  a.per_reviewer.reserve(static_cast<std::size_t>(reviewers));
  for (std::size_t k = 0; k < static_cast<std::size_t>(reviewers); ++k) {
    const std::size_t pick = k + rng.below(pairs.size() - k);
    std::swap(pairs[k], pairs[pick]);
    a.per_reviewer.push_back({pairs[k].first, pairs[k].second});
  }
  return a;
}

ScoreSet observe(const Assignment& assignment, const ItemValues& values,
                 std::span<const CalibrationFunction> calibrations, const NoiseModel& noise,
                 Stream& rng) {
  if (calibrations.size() != assignment.per_reviewer.size()) {
    throw argument_error("observe: need one calibration function per reviewer");
  }
  if (assignment.item_count != values.size()) {
    throw argument_error("observe: assignment and item values disagree on the item count");
  }
  ScoreSet scores;
  scores.per_reviewer.resize(assignment.per_reviewer.size());
  for (std::size_t j = 0; j < assignment.per_reviewer.size(); ++j) {
    for (int item : assignment.per_reviewer[j]) {
      scores.per_reviewer[j].push_back({item, evaluate(calibrations[j], values[item], noise, rng)});
    }
  }
  return scores;
}

OrdinalObservations deduce_ordinal(const Assignment& assignment, const ScoreSet& scores) {
  if (scores.per_reviewer.size() != assignment.per_reviewer.size()) {
    throw argument_error("deduce_ordinal: score set does not mirror the assignment");
  }
  std::vector<Comparison> comparisons;
  comparisons.reserve(scores.per_reviewer.size());
  for (const auto& reviewer : scores.per_reviewer) {
    if (reviewer.size() != 2) {
      throw argument_error("deduce_ordinal: every reviewer must score exactly two items");
    }
    const ItemScore& a = reviewer[0];
    const ItemScore& b = reviewer[1];
    if (a.score == b.score) {
      throw degenerate_tie_error("deduce_ordinal: reviewer gave two items the same score");
    }
    comparisons.push_back(a.score > b.score ? Comparison{a.item, b.item} : Comparison{b.item, a.item});
  }
  return OrdinalObservations(assignment.item_count, std::move(comparisons));
}

}  // namespace calrank
