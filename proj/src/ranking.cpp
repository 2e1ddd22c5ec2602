#include "calrank/ranking.hpp"

#include <functional>
#include <queue>

#include "calrank/canonical.hpp"
#include "calrank/error.hpp"

namespace calrank {

namespace {

constexpr int kMaxEnumerate = 10;
constexpr int kMaxDownsetItems = 20;

// number of linear extensions of the items outside S, for every S
std::vector<std::uint64_t> downset_counts(const ComparisonGraph& g) {
  const int n = g.size();
  if (n > kMaxDownsetItems) {
    throw capacity_error("downset counting is limited to 20 items");
  }
  std::vector<std::uint32_t> preds(static_cast<std::size_t>(n), 0);
  for (int v = 0; v < n; ++v) {
    for (int p : g.predecessors(v)) preds[static_cast<std::size_t>(v)] |= 1u << p;
  }
  const std::uint32_t full = (1u << n) - 1;
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(full) + 1, 0);
  counts[full] = 1;
  for (std::uint32_t s = full; s-- > 0;) {
    std::uint64_t total = 0;
    for (int v = 0; v < n; ++v) {
      const std::uint32_t bit = 1u << v;
      if ((s & bit) == 0 && (preds[static_cast<std::size_t>(v)] & ~s) == 0) total += counts[s | bit];
    }
    counts[s] = total;
  }
  if (counts[0] == 0) {
    throw cycle_error("comparison graph contains a cycle");
  }
  return counts;
}

}  // namespace

ComparisonGraph::ComparisonGraph(const OrdinalObservations& observations)
    : n_(observations.item_count()),
      adjacency_(static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_), 0),
      out_(static_cast<std::size_t>(n_)),
      in_(static_cast<std::size_t>(n_)) {
  for (const Comparison& c : observations.comparisons()) {
    adjacency_[index(c.winner, c.loser)] = 1;
    out_[static_cast<std::size_t>(c.winner)].push_back(c.loser);
    in_[static_cast<std::size_t>(c.loser)].push_back(c.winner);
    ++edge_count_;
  }
}

Ranking topological_order_index_ties(const ComparisonGraph& g) {
  const int n = g.size();
  std::vector<int> in_degree(static_cast<std::size_t>(n));
  std::priority_queue<int, std::vector<int>, std::greater<>> ready;
  for (int v = 0; v < n; ++v) {
    in_degree[static_cast<std::size_t>(v)] = static_cast<int>(g.predecessors(v).size());
    if (in_degree[static_cast<std::size_t>(v)] == 0) ready.push(v);
  }
  std::vector<int> order;
  order.reserve(static_cast<std::size_t>(n));
  while (!ready.empty()) {
    const int v = ready.top();
    ready.pop();
    order.push_back(v);
    for (int next : g.successors(v)) {
      if (--in_degree[static_cast<std::size_t>(next)] == 0) ready.push(next);
    }
  }
  if (static_cast<int>(order.size()) != n) {
    throw cycle_error("comparison graph contains a cycle");
  }
  return Ranking::from_order(std::move(order));
}

bool is_topological_ordering(const Ranking& r, const ComparisonGraph& g) {
  if (r.size() != g.size()) return false;
  for (int v = 0; v < g.size(); ++v) {
    for (int next : g.successors(v)) {
      if (r.rank_of(v) >= r.rank_of(next)) return false;
    }
  }
  return true;
}

std::vector<Ranking> enumerate_topological_orderings(const ComparisonGraph& g) {
  const int n = g.size();
  if (n > kMaxEnumerate) {
    throw capacity_error("enumerate_topological_orderings is limited to 10 items");
  }
  std::vector<int> in_degree(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) in_degree[static_cast<std::size_t>(v)] = static_cast<int>(g.predecessors(v).size());
  std::vector<char> placed(static_cast<std::size_t>(n), 0);
  std::vector<int> prefix;
  std::vector<Ranking> result;

  std::function<void()> extend = [&]() {
    if (static_cast<int>(prefix.size()) == n) {
      result.push_back(Ranking::from_order(prefix));
      return;
    }
    for (int v = 0; v < n; ++v) {
      const auto k = static_cast<std::size_t>(v);
      if (placed[k] || in_degree[k] != 0) continue;
      placed[k] = 1;
      prefix.push_back(v);
      for (int next : g.successors(v)) --in_degree[static_cast<std::size_t>(next)];
      extend();
      for (int next : g.successors(v)) ++in_degree[static_cast<std::size_t>(next)];
      prefix.pop_back();
      placed[k] = 0;
    }
  };
  extend();
  if (result.empty()) {
    throw cycle_error("comparison graph contains a cycle");
  }
  return result;
}

std::uint64_t count_topological_orderings(const ComparisonGraph& g) {
  return downset_counts(g)[0];
}

Ranking uniform_topological_ordering(const ComparisonGraph& g, Stream& rng) {
  const int n = g.size();
  const std::vector<std::uint64_t> counts = downset_counts(g);
  std::vector<std::uint32_t> preds(static_cast<std::size_t>(n), 0);
  for (int v = 0; v < n; ++v) {
    for (int p : g.predecessors(v)) preds[static_cast<std::size_t>(v)] |= 1u << p;
  }
  std::vector<int> order;
  order.reserve(static_cast<std::size_t>(n));
  std::uint32_t placed = 0;
  for (int step = 0; step < n; ++step) {
    // Next item v is chosen with probability counts[S + v] / counts[S].
    std::uint64_t pick = rng.below(counts[placed]);
    for (int v = 0; v < n; ++v) {
      const std::uint32_t bit = 1u << v;
      if ((placed & bit) != 0 || (preds[static_cast<std::size_t>(v)] & ~placed) != 0) continue;
      const std::uint64_t weight = counts[placed | bit];
      if (pick < weight) {
        order.push_back(v);
        placed |= bit;
        break;
      }
      pick -= weight;
    }
  }
  return Ranking::from_order(std::move(order));
}

CardinalRankResult cardinal_rank_estimate_audited(const Assignment& assignment, const ScoreSet& scores,
                                                  const WeightFunction& w, Stream& rng,
                                                  InitialEstimate init) {
  const OrdinalObservations observations = deduce_ordinal(assignment, scores);
  const ComparisonGraph g(observations);
  Ranking current = init == InitialEstimate::index_ties ? topological_order_index_ties(g)
                                                        : uniform_topological_ordering(g, rng);

  struct Entry {
    int reviewer;
    double score;
  };
  const int n = g.size();
  std::vector<std::vector<Entry>> pool(static_cast<std::size_t>(n));
  for (int j = 0; j < scores.reviewer_count(); ++j) {
    for (const ItemScore& s : scores.per_reviewer[static_cast<std::size_t>(j)]) {
      pool[static_cast<std::size_t>(s.item)].push_back({j, s.score});
    }
  }
  std::vector<char> consumed(static_cast<std::size_t>(scores.reviewer_count()), 0);
  std::vector<const Entry*> available;
  auto sample_remaining = [&](int item) -> const Entry* {
    available.clear();
    for (const Entry& e : pool[static_cast<std::size_t>(item)]) {
      if (!consumed[static_cast<std::size_t>(e.reviewer)]) available.push_back(&e);
    }
    if (available.empty()) return nullptr;
    return available[rng.below(available.size())];
  };
  auto has_remaining = [&](int item) {
    for (const Entry& e : pool[static_cast<std::size_t>(item)]) {
      if (!consumed[static_cast<std::size_t>(e.reviewer)]) return true;
    }
    return false;
  };

  CardinalRankResult result;
  int t = 0;
  while (t < n - 1) {
    const int upper = current.item_at(t);
    const int lower = current.item_at(t + 1);
    // current is topological, so swapping an adjacent pair breaks it exactly
    // when the pair itself is an edge.
    const bool flip_is_topological = !g.has_edge(upper, lower);
    if (flip_is_topological && has_remaining(upper) && has_remaining(lower)) {
      const Entry* upper_pick = sample_remaining(upper);
      const Entry* lower_pick = sample_remaining(lower);
      if (upper_pick->reviewer == lower_pick->reviewer) {
        // A shared reviewer would have compared the pair directly.
        throw invariant_error("cardinal_rank_estimate: flippable pair scored by a single reviewer");
      }
      consumed[static_cast<std::size_t>(upper_pick->reviewer)] = 1;
      consumed[static_cast<std::size_t>(lower_pick->reviewer)] = 1;
      const bool flip = !canonical_estimate(upper_pick->score, lower_pick->score, w, rng).first_won();
      result.flips.push_back({t, upper, lower, upper_pick->score, lower_pick->score, upper_pick->reviewer,
                              lower_pick->reviewer, flip});
      if (flip) current = current.swapped(t, t + 1);
      t += 2;
    } else {
      t += 1;
    }
  }
  result.ranking = std::move(current);
  return result;
}

Ranking cardinal_rank_estimate(const Assignment& assignment, const ScoreSet& scores, const WeightFunction& w,
                               Stream& rng, InitialEstimate init) {
  return cardinal_rank_estimate_audited(assignment, scores, w, rng, init).ranking;
}

}  // namespace calrank
