#pragma once

// Items, reviewers, calibrations and the observation process shared by all
// estimators. Item and reviewer indices are 0-based here; every external
// format (CLI, reports) is 1-based.

#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "calrank/random.hpp"

namespace calrank {

// Latent item qualities. At least two items, pairwise distinct.
class ItemValues {
 public:
  explicit ItemValues(std::vector<double> values);

  int size() const { return static_cast<int>(values_.size()); }
  double operator[](int item) const { return values_[static_cast<std::size_t>(item)]; }
  std::span<const double> values() const { return values_; }

 private:
  std::vector<double> values_;
};

struct Knot {
  double input;
  double output;
};

// A reviewer's strictly increasing map from latent value to reported score.
class CalibrationFunction {
 public:
  struct Identity {};
  struct Shift {
    double offset;
  };
  struct Affine {
    double slope;
    double intercept;
  };
  // Linear interpolation between knots; linear extrapolation past either end
  // using the end segment's slope.
  struct PiecewiseLinear {
    std::vector<Knot> knots;
  };
  using Variant = std::variant<Identity, Shift, Affine, PiecewiseLinear>;

  CalibrationFunction() : form_(Identity{}) {}

  static CalibrationFunction identity() { return CalibrationFunction(Identity{}); }
  static CalibrationFunction shift(double offset);
  static CalibrationFunction affine(double slope, double intercept);
  static CalibrationFunction piecewise_linear(std::vector<Knot> knots);

  double operator()(double x) const;

  const Variant& form() const { return form_; }
  std::string describe() const;

 private:
  explicit CalibrationFunction(Variant form) : form_(std::move(form)) {}

  Variant form_;
};

// i.i.d. additive noise on every (item, reviewer) evaluation.
class NoiseModel {
 public:
  struct None {};
  struct Gaussian {
    double sigma;
  };
  struct Uniform {
    double half_width;
  };
  using Variant = std::variant<None, Gaussian, Uniform>;

  NoiseModel() : form_(None{}) {}

  static NoiseModel none() { return NoiseModel(None{}); }
  static NoiseModel gaussian(double sigma);
  static NoiseModel uniform(double half_width);

  bool is_none() const { return std::holds_alternative<None>(form_); }
  double draw(Stream& rng) const;

  const Variant& form() const { return form_; }
  std::string describe() const;

 private:
  explicit NoiseModel(Variant form) : form_(form) {}

  Variant form_;
};

// Maps a non-negative score gap to extra confidence in [0, 1).
class WeightFunction {
 public:
  // w(x) = gamma x / (1 + gamma x)
  struct Ratio {
    double gamma;
  };
  // w(x) = 2 / (1 + e^{-x}) - 1
  struct Logistic {};
  // Strictly increasing samples, first input 0, outputs in [0, 1). Linear
  // between samples; past the last sample w approaches 1 as
  // 1 - (1 - w_last) x_last / x.
  struct Table {
    std::vector<Knot> samples;
  };
  using Variant = std::variant<Ratio, Logistic, Table>;

  WeightFunction() : form_(Ratio{1.0}) {}

  static WeightFunction ratio(double gamma);
  static WeightFunction logistic() { return WeightFunction(Logistic{}); }
  static WeightFunction table(std::vector<Knot> samples);

  // Requires x >= 0.
  double operator()(double x) const;

  const Variant& form() const { return form_; }
  std::string describe() const;

 private:
  explicit WeightFunction(Variant form) : form_(std::move(form)) {}

  Variant form_;
};

// Item sets handed to each reviewer (S_1, ..., S_m).
struct Assignment {
  int item_count = 0;
  std::vector<std::vector<int>> per_reviewer;

  int reviewer_count() const { return static_cast<int>(per_reviewer.size()); }
};

// A/B assignment: a uniformly permuted reviewer order whose first half rates
// item 0 and second half item 1. The j-th reviewer of each half forms voting
// pair j, so the order itself is part of the observation.
struct AbAssignment {
  std::vector<int> reviewer_order;

  int reviewer_count() const { return static_cast<int>(reviewer_order.size()); }
  int half() const { return reviewer_count() / 2; }
  Assignment assignment() const;
};

// Permutation with both views kept: item_at_rank (pi) and rank_of_item (sigma).
class Ranking {
 public:
  Ranking() = default;

  static Ranking from_order(std::vector<int> item_at_rank);
  static Ranking from_ranks(std::vector<int> rank_of_item);
  static Ranking identity(int n);

  int size() const { return static_cast<int>(item_at_rank_.size()); }
  int item_at(int rank) const { return item_at_rank_[static_cast<std::size_t>(rank)]; }
  int rank_of(int item) const { return rank_of_item_[static_cast<std::size_t>(item)]; }
  const std::vector<int>& order() const { return item_at_rank_; }
  const std::vector<int>& ranks() const { return rank_of_item_; }

  // Ranking with the items at the two ranks exchanged.
  Ranking swapped(int rank_a, int rank_b) const;

  bool operator==(const Ranking& other) const { return item_at_rank_ == other.item_at_rank_; }

 private:
  Ranking(std::vector<int> order, std::vector<int> ranks)
      : item_at_rank_(std::move(order)), rank_of_item_(std::move(ranks)) {}

  std::vector<int> item_at_rank_;
  std::vector<int> rank_of_item_;
};

// One resolved pairwise comparison.
struct Comparison {
  int winner;
  int loser;

  bool operator==(const Comparison&) const = default;
};

// The set B of ordinal observations over item_count items.
class OrdinalObservations {
 public:
  OrdinalObservations(int item_count, std::vector<Comparison> comparisons);

  int item_count() const { return item_count_; }
  const std::vector<Comparison>& comparisons() const { return comparisons_; }
  std::size_t size() const { return comparisons_.size(); }

 private:
  int item_count_;
  std::vector<Comparison> comparisons_;
};

struct ItemScore {
  int item;
  double score;
};

// Per-reviewer reported scores; mirrors the Assignment that produced it.
struct ScoreSet {
  std::vector<std::vector<ItemScore>> per_reviewer;

  int reviewer_count() const { return static_cast<int>(per_reviewer.size()); }
};

// Items sorted by strictly descending value.
Ranking induced_ranking(const ItemValues& values);

// f(x) plus one fresh noise draw; exactly f(x) without noise.
double evaluate(const CalibrationFunction& f, double x, const NoiseModel& noise, Stream& rng);

// m even, m >= 2.
AbAssignment assign_ab(int reviewers, Stream& rng);

// m distinct unordered pairs drawn uniformly without replacement, one per
// reviewer, with 1 < m < C(n, 2). Each pair is stored with the smaller index first.
Assignment assign_pairs(int items, int reviewers, Stream& rng);

// Reviewer j scores each item of S_j through calibrations[j] plus noise.
ScoreSet observe(const Assignment& assignment, const ItemValues& values,
                 std::span<const CalibrationFunction> calibrations, const NoiseModel& noise,
                 Stream& rng);

// One comparison per reviewer: the item with the strictly larger score wins.
OrdinalObservations deduce_ordinal(const Assignment& assignment, const ScoreSet& scores);

}  // namespace calrank
