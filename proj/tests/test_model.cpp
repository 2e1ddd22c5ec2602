#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "calrank/error.hpp"
#include "calrank/model.hpp"
#include "calrank/ranking.hpp"

using namespace calrank;

TEST_SUITE("core-model") {

TEST_CASE("item values need two distinct entries") {
  CHECK_THROWS_AS(ItemValues({1.0}), invariant_error);
  CHECK_THROWS_AS(ItemValues({0.3, 0.5, 0.3}), invariant_error);
  CHECK(ItemValues({0.3, 0.5}).size() == 2);
}

TEST_CASE("induced ranking sorts by descending value") {
  CHECK(induced_ranking(ItemValues({0.2, 0.9, 0.5})).order() == std::vector<int>{1, 2, 0});
  CHECK(induced_ranking(ItemValues({1.0, 0.0})).order() == std::vector<int>{0, 1});
  CHECK(induced_ranking(ItemValues({5, 4, 3, 2, 1})) == Ranking::identity(5));
}

TEST_CASE("calibration constructors evaluate and reject non-monotone forms") {
  Stream rng(1);
  const NoiseModel none = NoiseModel::none();
  CHECK(evaluate(CalibrationFunction::affine(2, 1), 3, none, rng) == 7.0);
  CHECK(evaluate(CalibrationFunction::shift(1), 0.4, none, rng) == doctest::Approx(1.4).epsilon(1e-15));
  CHECK(evaluate(CalibrationFunction::identity(), -2.5, none, rng) == -2.5);
  CHECK_THROWS_AS(CalibrationFunction::affine(0, 1), invariant_error);
  CHECK_THROWS_AS(CalibrationFunction::affine(-1, 1), invariant_error);
  CHECK_THROWS_AS(CalibrationFunction::piecewise_linear({{0, 0}}), invariant_error);
  CHECK_THROWS_AS(CalibrationFunction::piecewise_linear({{0, 0}, {1, 0}}), invariant_error);
  CHECK_THROWS_AS(CalibrationFunction::piecewise_linear({{1, 0}, {0, 1}}), invariant_error);

  const auto pl = CalibrationFunction::piecewise_linear({{0, 0}, {1, 3}, {2, 4}});
  CHECK(pl(0.5) == doctest::Approx(1.5));
  CHECK(pl(1.5) == doctest::Approx(3.5));
  CHECK(pl(-1) == doctest::Approx(-3));  // first-segment slope
  CHECK(pl(4) == doctest::Approx(6));    // last-segment slope
}

TEST_CASE("every calibration constructor is strictly increasing on a grid") {
  const std::vector<CalibrationFunction> fs{
      CalibrationFunction::identity(), CalibrationFunction::shift(-3.5), CalibrationFunction::affine(0.01, 2),
      CalibrationFunction::affine(40, -1),
      CalibrationFunction::piecewise_linear({{-1, -10}, {0, 0}, {0.5, 0.01}, {3, 100}})};
  for (const auto& f : fs) {
    double prev = f(-5.0);
    for (int k = 1; k < 1000; ++k) {
      const double x = -5.0 + 10.0 * k / 999.0;
      const double y = f(x);
      CHECK_MESSAGE(y > prev, f.describe(), " at x = ", x);
      prev = y;
    }
  }
}

TEST_CASE("gaussian noise has the right mean") {
  Stream rng(11);
  const NoiseModel noise = NoiseModel::gaussian(0.5);
  double total = 0.0;
  const int draws = 1000000;
  for (int k = 0; k < draws; ++k) total += evaluate(CalibrationFunction::identity(), 0.5, noise, rng);
  CHECK(std::abs(total / draws - 0.5) < 0.002);
}

TEST_CASE("uniform noise stays in its band") {
  Stream rng(12);
  const NoiseModel noise = NoiseModel::uniform(0.25);
  for (int k = 0; k < 10000; ++k) {
    const double y = evaluate(CalibrationFunction::identity(), 1.0, noise, rng);
    CHECK(y >= 0.75);
    CHECK(y <= 1.25);
  }
  CHECK_THROWS_AS(NoiseModel::gaussian(-1), invariant_error);
}

TEST_CASE("weight functions") {
  const auto r = WeightFunction::ratio(1);
  CHECK(r(0) == 0.0);
  CHECK(r(1) == doctest::Approx(0.5));
  CHECK(r(3) == doctest::Approx(0.75));
  const auto l = WeightFunction::logistic();
  CHECK(l(0) == 0.0);
  CHECK(l(1) == doctest::Approx(2.0 / (1.0 + std::exp(-1.0)) - 1.0));
  CHECK(l(20) < 1.0);
  CHECK(l(50) <= 1.0);
  const auto t = WeightFunction::table({{0, 0.1}, {1, 0.5}, {2, 0.6}});
  CHECK(t(0.5) == doctest::Approx(0.3));
  CHECK(t(4) == doctest::Approx(1 - 0.4 * 2 / 4));
  CHECK_THROWS_AS(r(-0.1), argument_error);
  CHECK_THROWS_AS(WeightFunction::ratio(0), invariant_error);
  CHECK_THROWS_AS(WeightFunction::table({{0.5, 0}, {1, 0.5}}), invariant_error);
  CHECK_THROWS_AS(WeightFunction::table({{0, 0}, {1, 1.0}}), invariant_error);

  for (const auto& w : {r, l, t, WeightFunction::ratio(1e-3), WeightFunction::ratio(1e3)}) {
    double prev = w(0);
    for (int k = 1; k <= 1000; ++k) {
      const double v = w(k * 0.01);
      CHECK(v > prev);
      CHECK(v < 1.0);
      prev = v;
    }
  }
}

TEST_CASE("ranking views round-trip for every permutation up to n = 7") {
  for (int n = 1; n <= 7; ++n) {
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    do {
      const Ranking a = Ranking::from_order(perm);
      const Ranking b = Ranking::from_ranks(perm);
      for (int t = 0; t < n; ++t) {
        REQUIRE(a.rank_of(a.item_at(t)) == t);
        REQUIRE(b.item_at(b.rank_of(t)) == t);
      }
      REQUIRE(Ranking::from_ranks(a.ranks()) == a);
      REQUIRE(Ranking::from_order(b.order()) == b);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  CHECK_THROWS_AS(Ranking::from_order({0, 0, 1}), invariant_error);
  CHECK_THROWS_AS(Ranking::from_ranks({0, 3, 1}), invariant_error);
}

TEST_CASE("assign_ab") {
  Stream rng(3);
  CHECK_THROWS_AS(assign_ab(0, rng), argument_error);
  CHECK_THROWS_AS(assign_ab(3, rng), argument_error);

  SUBCASE("m = 2 splits both ways equally") {
    int first_on_item0 = 0;
    const int draws = 100000;
    for (int k = 0; k < draws; ++k) first_on_item0 += assign_ab(2, rng).reviewer_order[0] == 0;
    CHECK(std::abs(first_on_item0 / double(draws) - 0.5) < 0.01);
  }
  SUBCASE("m = 4 draws each item-0 subset with probability 1/6") {
    std::map<std::set<int>, int> counts;
    const int draws = 1000000;
    for (int k = 0; k < draws; ++k) {
      const AbAssignment a = assign_ab(4, rng);
      counts[{a.reviewer_order[0], a.reviewer_order[1]}]++;
    }
    CHECK(counts.size() == 6);
    for (const auto& [subset, c] : counts) CHECK(std::abs(c / double(draws) - 1.0 / 6.0) < 0.003);
  }
  SUBCASE("every reviewer holds item 0 half the time") {
    std::vector<int> holds(6, 0);
    const int draws = 100000;
    for (int k = 0; k < draws; ++k) {
      const AbAssignment a = assign_ab(6, rng);
      for (int j = 0; j < a.half(); ++j) holds[static_cast<std::size_t>(a.reviewer_order[static_cast<std::size_t>(j)])]++;
    }
    for (int h : holds) CHECK(std::abs(h / double(draws) - 0.5) < 0.01);
  }
  SUBCASE("assignment view puts the first half on item 0") {
    const AbAssignment a = assign_ab(6, rng);
    const Assignment view = a.assignment();
    REQUIRE(view.reviewer_count() == 6);
    for (int j = 0; j < 6; ++j) {
      const int reviewer = a.reviewer_order[static_cast<std::size_t>(j)];
      CHECK(view.per_reviewer[static_cast<std::size_t>(reviewer)] == std::vector<int>{j < 3 ? 0 : 1});
    }
  }
}

TEST_CASE("assign_pairs") {
  Stream rng(5);
  CHECK_THROWS_AS(assign_pairs(4, 6, rng), argument_error);
  CHECK_THROWS_AS(assign_pairs(4, 1, rng), argument_error);

  SUBCASE("n = 3, m = 2 picks each two-pair subset with probability 1/3") {
    std::map<std::set<std::pair<int, int>>, int> counts;
    const int draws = 100000;
    for (int k = 0; k < draws; ++k) {
      const Assignment a = assign_pairs(3, 2, rng);
      std::set<std::pair<int, int>> key;
      for (const auto& s : a.per_reviewer) key.insert({s[0], s[1]});
      counts[key]++;
    }
    CHECK(counts.size() == 3);
    for (const auto& [key, c] : counts) CHECK(std::abs(c / double(draws) - 1.0 / 3.0) < 0.01);
  }
  SUBCASE("pairs are distinct and well-formed") {
    for (int k = 0; k < 2000; ++k) {
      const Assignment a = assign_pairs(5, 5, rng);
      std::set<std::pair<int, int>> seen;
      for (const auto& s : a.per_reviewer) {
        REQUIRE(s.size() == 2);
        CHECK(s[0] < s[1]);
        CHECK(s[1] < 5);
        seen.insert({s[0], s[1]});
      }
      CHECK(seen.size() == 5);
    }
  }
}

TEST_CASE("deduce_ordinal") {
  SUBCASE("higher score wins") {
    Assignment a{3, {{0, 1}}};
    ScoreSet y{{{{0, 0.8}, {1, 0.3}}}};
    const auto b = deduce_ordinal(a, y);
    REQUIRE(b.size() == 1);
    CHECK(b.comparisons()[0] == Comparison{0, 1});
  }
  SUBCASE("chain of two reviewers") {
    Stream rng(1);
    Assignment a{3, {{0, 1}, {1, 2}}};
    const std::vector<CalibrationFunction> fs{CalibrationFunction::shift(5), CalibrationFunction::affine(0.1, -2)};
    const auto y = observe(a, ItemValues({3, 2, 1}), fs, NoiseModel::none(), rng);
    const auto b = deduce_ordinal(a, y);
    CHECK(b.comparisons() == std::vector<Comparison>{{0, 1}, {1, 2}});
  }
  SUBCASE("tie is a hard error") {
    CHECK_THROWS_AS(deduce_ordinal(Assignment{2, {{0, 1}}}, ScoreSet{{{{0, 0.5}, {1, 0.5}}}}), degenerate_tie_error);
  }
  SUBCASE("noiseless observations agree with the truth and are acyclic") {
    Stream rng(9);
    for (int trial = 0; trial < 2000; ++trial) {
      const int n = 3 + static_cast<int>(rng.below(6));
      std::vector<double> xs(static_cast<std::size_t>(n));
      for (double& x : xs) x = rng.uniform(0, n);
      const ItemValues values(xs);
      const int m = 2 + static_cast<int>(rng.below(static_cast<std::size_t>(n * (n - 1) / 2 - 2)));
      const Assignment a = assign_pairs(n, m, rng);
      std::vector<CalibrationFunction> fs;
      for (int j = 0; j < m; ++j) fs.push_back(CalibrationFunction::affine(rng.uniform(0.01, 3), rng.uniform(-5, 5)));
      const auto b = deduce_ordinal(a, observe(a, values, fs, NoiseModel::none(), rng));
      for (const Comparison& c : b.comparisons()) CHECK(values[c.winner] > values[c.loser]);
      CHECK_NOTHROW(topological_order_index_ties(ComparisonGraph(b)));
    }
  }
}

TEST_CASE("ordinal observations validate their pairs") {
  CHECK_THROWS_AS(OrdinalObservations(3, {{0, 0}}), invariant_error);
  CHECK_THROWS_AS(OrdinalObservations(3, {{0, 3}}), invariant_error);
  CHECK_THROWS_AS(OrdinalObservations(3, {{0, 1}, {1, 0}}), invariant_error);
}

}
