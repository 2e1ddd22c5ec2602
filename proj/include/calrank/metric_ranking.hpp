#pragma once

// Refinement of any ordinal ranking estimator under Kendall-tau and
// Spearman-footrule loss: find a topologically-identical pair, pull its
// ancestors above it and its descendants below it, then let the canonical
// estimator order the pair.

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "calrank/model.hpp"
#include "calrank/ranking.hpp"

namespace calrank {

// Number of item pairs ordered differently by the two rankings.
std::int64_t kendall_tau(const Ranking& a, const Ranking& b);

// Sum over items of |rank_a(i) - rank_b(i)|.
std::int64_t spearman_footrule(const Ranking& a, const Ranking& b);

struct ReachableSets {
  std::vector<int> above;  // ancestors
  std::vector<int> below;  // descendants
};

ReachableSets reachable_sets(const ComparisonGraph& g, int item);

// Two items never compared with each other, compared against exactly the
// same third items with the same outcomes. above/below are the shared
// ancestor and descendant sets, ascending by item index.
struct IdenticalPair {
  int first;
  int second;
  std::vector<int> above;
  std::vector<int> below;
};

bool is_topologically_identical(const ComparisonGraph& g, int a, int b);

// First qualifying pair (i < i') in lexicographic order whose items both have
// at least one score in the score set.
std::optional<IdenticalPair> find_topologically_identical_pair(const OrdinalObservations& observations,
                                                               const ScoreSet& scores);

// Affected items (above, the pair, below) reoccupy their original positions
// in the order: above, then the pair, then below; each group keeps its
// relative order from the initial ranking. Other items do not move. Throws
// argument_error when the pair is not topologically identical.
Ranking rearrange(const Ranking& initial, const IdenticalPair& pair, const OrdinalObservations& observations);

using OrdinalEstimator = std::function<Ranking(const OrdinalObservations&, Stream&)>;

OrdinalEstimator index_ties_estimator();
OrdinalEstimator uniform_topological_estimator();

struct MetricRankOptions {
  // Keep scanning for further pairs disjoint from the ones already handled.
  bool multi_pair = false;
};

Ranking metric_rank_estimate(const Assignment& assignment, const ScoreSet& scores, const OrdinalEstimator& ordinal,
                             const WeightFunction& w, Stream& rng, MetricRankOptions options = {});

}  // namespace calrank
