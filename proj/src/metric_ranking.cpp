#include "calrank/metric_ranking.hpp"

#include <algorithm>
#include <cstdlib>

#include "calrank/canonical.hpp"
#include "calrank/error.hpp"

namespace calrank {

namespace {

std::int64_t count_inversions(std::vector<int>& seq, std::vector<int>& scratch, std::size_t lo, std::size_t hi) {
  if (hi - lo < 2) return 0;
  const std::size_t mid = lo + (hi - lo) / 2;
  std::int64_t count = count_inversions(seq, scratch, lo, mid) + count_inversions(seq, scratch, mid, hi);
  std::size_t i = lo, j = mid, k = lo;
  while (i < mid && j < hi) {
    if (seq[j] < seq[i]) {
      count += static_cast<std::int64_t>(mid - i);
      scratch[k++] = seq[j++];
    } else {
      scratch[k++] = seq[i++];
    }
  }
  while (i < mid) scratch[k++] = seq[i++];
  while (j < hi) scratch[k++] = seq[j++];
  std::copy(scratch.begin() + static_cast<std::ptrdiff_t>(lo), scratch.begin() + static_cast<std::ptrdiff_t>(hi),
            seq.begin() + static_cast<std::ptrdiff_t>(lo));
  return count;
}

void require_same_size(const Ranking& a, const Ranking& b) {
  if (a.size() != b.size()) {
    throw argument_error("rankings must cover the same number of items");
  }
}

std::vector<int> collect(const ComparisonGraph& g, int start, bool upward) {
  std::vector<char> seen(static_cast<std::size_t>(g.size()), 0);
  std::vector<int> stack{start};
  std::vector<int> found;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int next : upward ? g.predecessors(v) : g.successors(v)) {
      if (seen[static_cast<std::size_t>(next)] || next == start) continue;
      seen[static_cast<std::size_t>(next)] = 1;
      found.push_back(next);
      stack.push_back(next);
    }
  }
  std::sort(found.begin(), found.end());
  return found;
}

std::vector<char> scored_items(const ScoreSet& scores, int n) {
  std::vector<char> has(static_cast<std::size_t>(n), 0);
  for (const auto& reviewer : scores.per_reviewer) {
    for (const ItemScore& s : reviewer) has[static_cast<std::size_t>(s.item)] = 1;
  }
  return has;
}

double sample_score(const ScoreSet& scores, int item, Stream& rng) {
  std::vector<double> found;
  for (const auto& reviewer : scores.per_reviewer) {
    for (const ItemScore& s : reviewer) {
      if (s.item == item) found.push_back(s.score);
    }
  }
  return found[rng.below(found.size())];
}

}  // namespace

std::int64_t kendall_tau(const Ranking& a, const Ranking& b) {
  require_same_size(a, b);
  std::vector<int> seq(static_cast<std::size_t>(a.size()));
  for (int t = 0; t < a.size(); ++t) seq[static_cast<std::size_t>(t)] = b.rank_of(a.item_at(t));
  std::vector<int> scratch(seq.size());
  return count_inversions(seq, scratch, 0, seq.size());
}

std::int64_t spearman_footrule(const Ranking& a, const Ranking& b) {
  require_same_size(a, b);
  std::int64_t total = 0;
  for (int i = 0; i < a.size(); ++i) total += std::abs(a.rank_of(i) - b.rank_of(i));
  return total;
}

ReachableSets reachable_sets(const ComparisonGraph& g, int item) {
  return {collect(g, item, true), collect(g, item, false)};
}

bool is_topologically_identical(const ComparisonGraph& g, int a, int b) {
  if (a == b || g.compared(a, b)) return false;
  for (int other = 0; other < g.size(); ++other) {
    if (other == a || other == b) continue;
    if (g.has_edge(a, other) != g.has_edge(b, other) || g.has_edge(other, a) != g.has_edge(other, b)) {
      return false;
    }
  }
  return true;
}

std::optional<IdenticalPair> find_topologically_identical_pair(const OrdinalObservations& observations,
                                                               const ScoreSet& scores) {
  const ComparisonGraph g(observations);
  const int n = g.size();
  const std::vector<char> scored = scored_items(scores, n);
  for (int i = 0; i < n; ++i) {
    for (int k = i + 1; k < n; ++k) {
      if (!scored[static_cast<std::size_t>(i)] || !scored[static_cast<std::size_t>(k)]) continue;
      if (!is_topologically_identical(g, i, k)) continue;
      ReachableSets sets = reachable_sets(g, i);
      return IdenticalPair{i, k, std::move(sets.above), std::move(sets.below)};
    }
  }
  return std::nullopt;
}

Ranking rearrange(const Ranking& initial, const IdenticalPair& pair, const OrdinalObservations& observations) {
  const ComparisonGraph g(observations);
  if (initial.size() != g.size()) {
    throw argument_error("rearrange: ranking and observations disagree on the item count");
  }
  if (!is_topologically_identical(g, pair.first, pair.second)) {
    throw argument_error("rearrange: pair is not topologically identical under the observations");
  }
  auto by_initial_rank = [&](std::vector<int> items) {
    std::sort(items.begin(), items.end(), [&](int x, int y) { return initial.rank_of(x) < initial.rank_of(y); });
    return items;
  };
  std::vector<int> placement = by_initial_rank(pair.above);
  for (int item : by_initial_rank({pair.first, pair.second})) placement.push_back(item);
  for (int item : by_initial_rank(pair.below)) placement.push_back(item);

  std::vector<int> positions;
  positions.reserve(placement.size());
  for (int item : placement) positions.push_back(initial.rank_of(item));
  std::sort(positions.begin(), positions.end());

  std::vector<int> order = initial.order();
  for (std::size_t k = 0; k < placement.size(); ++k) order[static_cast<std::size_t>(positions[k])] = placement[k];
  return Ranking::from_order(std::move(order));
}

OrdinalEstimator index_ties_estimator() {
  return [](const OrdinalObservations& b, Stream&) { return topological_order_index_ties(ComparisonGraph(b)); };
}

OrdinalEstimator uniform_topological_estimator() {
  return [](const OrdinalObservations& b, Stream& rng) { return uniform_topological_ordering(ComparisonGraph(b), rng); };
}

Ranking metric_rank_estimate(const Assignment& assignment, const ScoreSet& scores, const OrdinalEstimator& ordinal,
                             const WeightFunction& w, Stream& rng, MetricRankOptions options) {
  const OrdinalObservations observations = deduce_ordinal(assignment, scores);
  Ranking current = ordinal(observations, rng);
  const ComparisonGraph g(observations);
  const int n = g.size();
  const std::vector<char> scored = scored_items(scores, n);
  std::vector<char> used(static_cast<std::size_t>(n), 0);

  for (int i = 0; i < n; ++i) {
    for (int k = i + 1; k < n; ++k) {
      if (used[static_cast<std::size_t>(i)] || used[static_cast<std::size_t>(k)]) continue;
      if (!scored[static_cast<std::size_t>(i)] || !scored[static_cast<std::size_t>(k)]) continue;
      if (!is_topologically_identical(g, i, k)) continue;

      ReachableSets sets = reachable_sets(g, i);
      current = rearrange(current, IdenticalPair{i, k, std::move(sets.above), std::move(sets.below)}, observations);
      const double yi = sample_score(scores, i, rng);
      const double yk = sample_score(scores, k, rng);
      const bool i_first = canonical_estimate(yi, yk, w, rng).first_won();
      if (i_first != (current.rank_of(i) < current.rank_of(k))) {
        current = current.swapped(current.rank_of(i), current.rank_of(k));
      }
      if (!options.multi_pair) return current;
      used[static_cast<std::size_t>(i)] = 1;
      used[static_cast<std::size_t>(k)] = 1;
    }
  }
  return current;
}

}  // namespace calrank
