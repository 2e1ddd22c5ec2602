#include <doctest.h>

#include <map>
#include <set>

#include "calrank/canonical.hpp"
#include "calrank/error.hpp"
#include "calrank/ranking.hpp"
#include "oracles.hpp"
#include "scenarios.hpp"

using namespace calrank;

namespace {

ComparisonGraph graph(int n, std::vector<Comparison> edges) { return ComparisonGraph(OrdinalObservations(n, std::move(edges))); }

std::vector<std::pair<int, int>> edge_list(const OrdinalObservations& b) {
  std::vector<std::pair<int, int>> edges;
  for (const Comparison& c : b.comparisons()) edges.emplace_back(c.winner, c.loser);
  return edges;
}

// A random DAG: each pair (i, k) of a random permutation gets an edge with probability p.
OrdinalObservations random_dag(int n, double p, Stream& rng) {
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<Comparison> edges;
  for (int i = 0; i < n; ++i) {
    for (int k = i + 1; k < n; ++k) {
      if (rng.bernoulli(p)) edges.push_back({perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(k)]});
    }
  }
  return OrdinalObservations(n, edges);
}

}  // namespace

TEST_SUITE("ranking") {

TEST_CASE("index-ties topological order") {
  CHECK(topological_order_index_ties(graph(3, {{0, 1}})).order() == std::vector<int>{0, 1, 2});
  CHECK(topological_order_index_ties(graph(4, {})).order() == std::vector<int>{0, 1, 2, 3});
  CHECK(topological_order_index_ties(graph(3, {{2, 1}, {1, 0}})).order() == std::vector<int>{2, 1, 0});
  CHECK(topological_order_index_ties(graph(4, {{3, 0}, {2, 1}})).order() == std::vector<int>{2, 1, 3, 0});
  CHECK_THROWS_AS(topological_order_index_ties(graph(3, {{0, 1}, {1, 2}, {2, 0}})), cycle_error);
}

TEST_CASE("is_topological_ordering") {
  const auto chain = graph(3, {{0, 1}, {1, 2}});
  std::vector<int> perm{0, 1, 2};
  do {
    CHECK(is_topological_ordering(Ranking::from_order(perm), chain) == (perm == std::vector<int>{0, 1, 2}));
    CHECK(is_topological_ordering(Ranking::from_order(perm), graph(3, {})));
  } while (std::next_permutation(perm.begin(), perm.end()));
}

TEST_CASE("enumeration matches the permutation-filter oracle") {
  CHECK(enumerate_topological_orderings(graph(3, {{0, 1}})).size() == 3);
  CHECK(enumerate_topological_orderings(graph(4, {})).size() == 24);
  CHECK(enumerate_topological_orderings(graph(4, {{0, 1}, {1, 2}, {2, 3}})).size() == 1);
  CHECK_THROWS_AS(enumerate_topological_orderings(graph(11, {})), capacity_error);
  CHECK_THROWS_AS(enumerate_topological_orderings(graph(3, {{0, 1}, {1, 2}, {2, 0}})), cycle_error);

  Stream rng(1);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(6));
    const auto b = random_dag(n, rng.uniform(), rng);
    const ComparisonGraph g(b);
    const auto expected = oracle::linear_extensions(n, edge_list(b));
    const auto got = enumerate_topological_orderings(g);
    REQUIRE(got.size() == expected.size());
    for (std::size_t k = 0; k < got.size(); ++k) CHECK(got[k].order() == expected[k]);
    CHECK(count_topological_orderings(g) == expected.size());
    CHECK(is_topological_ordering(topological_order_index_ties(g), g));
    CHECK(topological_order_index_ties(g).order() == expected.front());
  }
}

TEST_CASE("counting linear extensions at the size limit") {
  std::uint64_t factorial = 1;
  for (int k = 2; k <= 20; ++k) factorial *= static_cast<std::uint64_t>(k);
  CHECK(count_topological_orderings(graph(20, {})) == factorial);
  CHECK_THROWS_AS(count_topological_orderings(graph(21, {})), capacity_error);
  Stream rng(2);
  CHECK_THROWS_AS(uniform_topological_ordering(graph(21, {}), rng), capacity_error);
}

TEST_CASE("uniform topological sampler") {
  Stream rng(3);
  auto frequencies = [&](const ComparisonGraph& g, int draws) {
    std::map<std::vector<int>, int> counts;
    for (int k = 0; k < draws; ++k) counts[uniform_topological_ordering(g, rng).order()]++;
    return counts;
  };
  SUBCASE("one edge") {
    const auto g = graph(3, {{0, 1}});
    const auto counts = frequencies(g, 100000);
    CHECK(counts.size() == 3);
    for (const auto& r : enumerate_topological_orderings(g)) CHECK(std::abs(counts.at(r.order()) / 1e5 - 1.0 / 3) < 0.01);
  }
  SUBCASE("chain") {
    const auto counts = frequencies(graph(4, {{3, 2}, {2, 1}, {1, 0}}), 1000);
    CHECK(counts.size() == 1);
    CHECK(counts.begin()->first == std::vector<int>{3, 2, 1, 0});
  }
  SUBCASE("empty graph") {
    const auto counts = frequencies(graph(3, {}), 100000);
    CHECK(counts.size() == 6);
    for (const auto& [order, c] : counts) CHECK(std::abs(c / 1e5 - 1.0 / 6) < 0.01);
  }
  SUBCASE("larger random DAGs always yield linear extensions") {
    for (int k = 0; k < 200; ++k) {
      const ComparisonGraph g(random_dag(12 + static_cast<int>(rng.below(9)), 0.2, rng));
      CHECK(is_topological_ordering(uniform_topological_ordering(g, rng), g));
    }
  }
}

TEST_CASE("a single flippable pair reduces to the canonical closed form") {
  // Pairs (0, 2) and (1, 2), truth 0 > 1 > 2: only the top two items can flip.
  const ItemValues values({3, 2, 1});
  const std::vector<CalibrationFunction> fs(2, CalibrationFunction::identity());
  const auto w = WeightFunction::ratio(1);
  const double expected = w_tilde(w, 1.0);
  CHECK(expected == doctest::Approx(0.75));
  int correct = 0;
  const int runs = 100000;
  for (int t = 0; t < runs; ++t) {
    Stream rng(7, static_cast<std::uint64_t>(t));
    Assignment a{3, {{0, 2}, {1, 2}}};
    if (rng.coin()) std::swap(a.per_reviewer[0], a.per_reviewer[1]);
    const ScoreSet y = observe(a, values, fs, NoiseModel::none(), rng);
    correct += cardinal_rank_estimate(a, y, w, rng) == induced_ranking(values);
  }
  CHECK(std::abs(correct / double(runs) - expected) < 0.01);
}

TEST_CASE("chain observations leave nothing to flip") {
  Stream rng(8);
  const ItemValues values({4, 3, 2, 1});
  Assignment a{4, {{0, 1}, {1, 2}, {2, 3}}};
  const std::vector<CalibrationFunction> fs(3, CalibrationFunction::shift(2));
  const ScoreSet y = observe(a, values, fs, NoiseModel::none(), rng);
  for (int k = 0; k < 100; ++k) {
    const auto result = cardinal_rank_estimate_audited(a, y, WeightFunction::ratio(1), rng);
    CHECK(result.flips.empty());
    CHECK(result.ranking == Ranking::identity(4));
  }
}

TEST_CASE("cardinal estimate is a linear extension with a consistent audit trail") {
  Stream rng(9);
  for (int trial = 0; trial < 10000; ++trial) {
    const int n = 3 + static_cast<int>(rng.below(6));
    const auto inst = scenarios::random_ranking_instance(n, rng);
    const auto b = deduce_ordinal(inst.assignment, inst.scores);
    const ComparisonGraph g(b);
    const auto init = trial % 2 == 0 ? InitialEstimate::index_ties : InitialEstimate::uniform_random;
    const auto result = cardinal_rank_estimate_audited(inst.assignment, inst.scores, WeightFunction::ratio(1), rng, init);
    REQUIRE(is_topological_ordering(result.ranking, g));
    std::set<int> reviewers;
    for (std::size_t k = 0; k < result.flips.size(); ++k) {
      const FlippableRecord& r = result.flips[k];
      if (k > 0) CHECK(r.position - result.flips[k - 1].position >= 2);
      CHECK(r.upper_reviewer != r.lower_reviewer);
      CHECK(reviewers.insert(r.upper_reviewer).second);
      CHECK(reviewers.insert(r.lower_reviewer).second);
      CHECK_FALSE(g.compared(r.upper_item, r.lower_item));
      // The sampled score belongs to the recorded reviewer and item.
      for (auto [reviewer, item, score] : {std::tuple{r.upper_reviewer, r.upper_item, r.upper_score},
                                           std::tuple{r.lower_reviewer, r.lower_item, r.lower_score}}) {
        bool found = false;
        for (const ItemScore& s : inst.scores.per_reviewer[static_cast<std::size_t>(reviewer)]) {
          found = found || (s.item == item && s.score == score);
        }
        CHECK(found);
      }
      const int upper_rank = result.ranking.rank_of(r.upper_item);
      const int lower_rank = result.ranking.rank_of(r.lower_item);
      CHECK(std::abs(upper_rank - lower_rank) == 1);
      CHECK((upper_rank > lower_rank) == r.flipped);
    }
  }
}

}
