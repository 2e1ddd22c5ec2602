#include <doctest.h>

#include <set>

#include "calrank/random.hpp"
#include "calrank/trials.hpp"

using namespace calrank;

TEST_SUITE("trials") {

TEST_CASE("streams are keyed by seed, stream id and lane") {
  Stream a(1, 2, 3), b(1, 2, 3);
  for (int k = 0; k < 100; ++k) CHECK(a() == b());
  std::set<std::uint64_t> firsts;
  for (std::uint64_t seed : {1, 2}) {
    for (std::uint64_t id : {0, 1, 2}) {
      for (std::uint64_t lane : {0, 1}) firsts.insert(Stream(seed, id, lane)());
    }
  }
  CHECK(firsts.size() == 12);
}

TEST_CASE("below is uniform and in range") {
  Stream rng(4);
  std::vector<int> counts(7, 0);
  for (int k = 0; k < 700000; ++k) {
    const std::size_t v = rng.below(7);
    REQUIRE(v < 7);
    counts[v]++;
  }
  for (int c : counts) CHECK(std::abs(c / 1e5 - 1.0) < 0.02);
  for (int k = 0; k < 1000; ++k) CHECK(rng.below(1) == 0);
}

TEST_CASE("uniform doubles lie in [0, 1)") {
  Stream rng(5);
  double total = 0.0;
  for (int k = 0; k < 1000000; ++k) {
    const double u = rng.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    total += u;
  }
  CHECK(std::abs(total / 1e6 - 0.5) < 0.002);
}

TEST_CASE("parallel and serial runners agree for any thread count") {
  auto kernel = [](std::uint64_t t, Tally& acc) {
    Stream rng(9, t);
    acc.add(0, static_cast<std::int64_t>(rng.below(1000)));
    acc.add(1, rng.coin());
  };
  const Tally serial = accumulate_trials_serial<Tally>(100000, kernel);
  for (int threads : {1, 2, 3, 8}) {
    const Tally parallel = accumulate_trials<Tally>(100000, threads, kernel);
    CHECK(parallel.sum == serial.sum);
    CHECK(parallel.sum_sq == serial.sum_sq);
  }

  auto mapper = [](std::uint64_t t) {
    Stream rng(10, t);
    return rng.uniform();
  };
  const auto reference = map_trials_serial<double>(5000, mapper);
  for (int threads : {1, 4}) CHECK(map_trials<double>(5000, threads, mapper) == reference);
}

TEST_CASE("tally statistics") {
  Tally t;
  for (int k = 0; k < 10; ++k) t.add(0, k % 2);
  CHECK(t.mean(0, 10) == doctest::Approx(0.5));
  // Sample standard deviation of five zeros and five ones is sqrt(10/36).
  CHECK(t.std_err(0, 10) == doctest::Approx(std::sqrt(10.0 / 36.0) / std::sqrt(10.0)));
}

}
