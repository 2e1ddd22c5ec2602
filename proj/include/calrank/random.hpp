#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>

namespace calrank {

// splitmix64 finalizer; used for seeding and for deriving per-trial streams.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// xoshiro256** engine. Satisfies UniformRandomBitGenerator so it plugs into
// <random> distributions and std::shuffle.
//
// Streams are keyed by (seed, stream id, lane): a trial's stream depends only
// on its own index, never on which thread ran it or in what order.
class Stream {
 public:
  using result_type = std::uint64_t;

  explicit Stream(std::uint64_t seed) : Stream(seed, 0, 0) {}

  Stream(std::uint64_t seed, std::uint64_t stream_id, std::uint64_t lane = 0) {
    std::uint64_t x = mix64(seed ^ 0x6A09E667F3BCC909ULL);
    x = mix64(x ^ (stream_id + 0x9E3779B97F4A7C15ULL));
    x = mix64(x ^ (lane + 0xD1B54A32D192ED03ULL));
    for (auto& word : state_) {
      x += 0x9E3779B97F4A7C15ULL;
      word = mix64(x);
    }
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  bool bernoulli(double p) { return uniform() < p; }

  bool coin() { return ((*this)() >> 63) != 0; }

  // Uniform integer in [0, bound). Lemire's multiply-shift with rejection.
  std::size_t below(std::size_t bound) {
    std::uint64_t x = (*this)();
    __uint128_t m = static_cast<__uint128_t>(x) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - static_cast<std::uint64_t>(bound)) % bound;
      while (low < threshold) {
        x = (*this)();
        m = static_cast<__uint128_t>(x) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::size_t>(m >> 64);
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> state_{};
};

}  // namespace calrank
