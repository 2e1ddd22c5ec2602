#pragma once

// Monte Carlo trial runners. Every trial owns its random stream (derived from
// the seed and its own index), so the OpenMP runners and the serial reference
// runners produce identical results for any thread count, provided the
// accumulator arithmetic is exact (integer tallies) or results are stored by
// trial index.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include <omp.h>

namespace calrank {

inline int resolve_threads(int requested) { return requested > 0 ? requested : omp_get_max_threads(); }

// Integer sums and sums of squares for up to kSlots quantities.
struct Tally {
  static constexpr std::size_t kSlots = 16;

  std::array<std::int64_t, kSlots> sum{};
  std::array<std::int64_t, kSlots> sum_sq{};

  void add(std::size_t slot, std::int64_t value) {
    sum[slot] += value;
    sum_sq[slot] += value * value;
  }

  Tally& operator+=(const Tally& other) {
    for (std::size_t k = 0; k < kSlots; ++k) {
      sum[k] += other.sum[k];
      sum_sq[k] += other.sum_sq[k];
    }
    return *this;
  }

  double mean(std::size_t slot, std::uint64_t count) const {
    return static_cast<double>(sum[slot]) / static_cast<double>(count);
  }

  // Standard error of the mean of the per-trial values in this slot.
  double std_err(std::size_t slot, std::uint64_t count) const {
    const auto n = static_cast<double>(count);
    const double mu = static_cast<double>(sum[slot]) / n;
    const double var = static_cast<double>(sum_sq[slot]) / n - mu * mu;
    return count > 1 ? std::sqrt(std::max(var, 0.0) * n / (n - 1.0) / n) : 0.0;
  }
};

// kernel(trial, acc) adds one trial's outcome into acc.
template <class Acc, class Kernel>
Acc accumulate_trials(std::uint64_t trials, int threads, const Kernel& kernel) {
  Acc total{};
  const auto count = static_cast<std::int64_t>(trials);
#pragma omp parallel num_threads(resolve_threads(threads))
  {
    Acc local{};
#pragma omp for schedule(static)
    for (std::int64_t t = 0; t < count; ++t) kernel(static_cast<std::uint64_t>(t), local);
#pragma omp critical(calrank_accumulate)
    total += local;
  }
  return total;
}

template <class Acc, class Kernel>
Acc accumulate_trials_serial(std::uint64_t trials, const Kernel& kernel) {
  Acc total{};
  for (std::uint64_t t = 0; t < trials; ++t) kernel(t, total);
  return total;
}

// kernel(trial) -> R; results are stored by trial index.
template <class R, class Kernel>
std::vector<R> map_trials(std::uint64_t trials, int threads, const Kernel& kernel) {
  std::vector<R> results(trials);
  const auto count = static_cast<std::int64_t>(trials);
#pragma omp parallel for schedule(dynamic, 1) num_threads(resolve_threads(threads))
  for (std::int64_t t = 0; t < count; ++t) results[static_cast<std::size_t>(t)] = kernel(static_cast<std::uint64_t>(t));
  return results;
}

template <class R, class Kernel>
std::vector<R> map_trials_serial(std::uint64_t trials, const Kernel& kernel) {
  std::vector<R> results;
  results.reserve(trials);
  for (std::uint64_t t = 0; t < trials; ++t) results.push_back(kernel(t));
  return results;
}

}  // namespace calrank
