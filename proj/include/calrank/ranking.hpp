#pragma once

// Comparison-graph machinery and the cardinal ranking estimator that
// refines a topological ordering by canonical-estimator flips of adjacent
// pairs.

#include <cstdint>
#include <vector>

#include "calrank/model.hpp"
#include "calrank/random.hpp"

namespace calrank {

// G(B): edge i -> i' iff "i beats i'" was observed. May hold a cycle when
// built from inconsistent observations; the algorithms below detect it.
class ComparisonGraph {
 public:
  explicit ComparisonGraph(const OrdinalObservations& observations);

  int size() const { return n_; }
  bool has_edge(int from, int to) const { return adjacency_[index(from, to)] != 0; }
  bool compared(int a, int b) const { return has_edge(a, b) || has_edge(b, a); }
  const std::vector<int>& successors(int item) const { return out_[static_cast<std::size_t>(item)]; }
  const std::vector<int>& predecessors(int item) const { return in_[static_cast<std::size_t>(item)]; }
  std::size_t edge_count() const { return edge_count_; }

 private:
  std::size_t index(int from, int to) const {
    return static_cast<std::size_t>(from) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(to);
  }

  int n_;
  std::size_t edge_count_ = 0;
  std::vector<char> adjacency_;
  std::vector<std::vector<int>> out_;
  std::vector<std::vector<int>> in_;
};

// Kahn's algorithm, always emitting the smallest available item index.
// Throws cycle_error on a cycle.
Ranking topological_order_index_ties(const ComparisonGraph& g);

bool is_topological_ordering(const Ranking& r, const ComparisonGraph& g);

// Every linear extension exactly once, in lexicographic order of
// item_at_rank. n <= 10.
std::vector<Ranking> enumerate_topological_orderings(const ComparisonGraph& g);

// Number of linear extensions by downset counting. n <= 20.
std::uint64_t count_topological_orderings(const ComparisonGraph& g);

// Exact uniform draw over linear extensions via downset counting over the
// 2^n subset lattice. n <= 20.
Ranking uniform_topological_ordering(const ComparisonGraph& g, Stream& rng);

enum class InitialEstimate { index_ties, uniform_random };

// Audit entry for one flippable pair: the rank position, the two items as
// they stood before the decision, the sampled scores and their reviewers.
struct FlippableRecord {
  int position;
  int upper_item;
  int lower_item;
  double upper_score;
  double lower_score;
  int upper_reviewer;
  int lower_reviewer;
  bool flipped;
};

struct CardinalRankResult {
  Ranking ranking;
  std::vector<FlippableRecord> flips;
};

// Scan adjacent positions of a topological ordering; a position is flippable
// when swapping it keeps the ordering topological and both items still have
// an unconsumed score. Each flippable pair samples one remaining score per
// item, consumes every score of the two supplying reviewers, and lets the
// canonical estimator decide the pair's order.
CardinalRankResult cardinal_rank_estimate_audited(const Assignment& assignment, const ScoreSet& scores,
                                                  const WeightFunction& w, Stream& rng,
                                                  InitialEstimate init = InitialEstimate::index_ties);

Ranking cardinal_rank_estimate(const Assignment& assignment, const ScoreSet& scores,
                               const WeightFunction& w, Stream& rng,
                               InitialEstimate init = InitialEstimate::index_ties);

}  // namespace calrank
