// Serial reference loop vs the OpenMP trial runner on the three experiment kinds.
#include <benchmark/benchmark.h>

#include "calrank/harness.hpp"

namespace {

using calrank::ScenarioConfig;
using calrank::Setting;

void run(benchmark::State& state, ScenarioConfig cfg, calrank::Report (*fn)(const ScenarioConfig&)) {
  cfg.serial_reference = state.range(0) == 0;
  cfg.threads = 0;
  for (auto _ : state) {
    calrank::Report report = fn(cfg);
    benchmark::DoNotOptimize(report.rows.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * cfg.trials * cfg.inner_samples));
  state.SetLabel(cfg.serial_reference ? "serial" : "openmp");
}

void BM_canonical(benchmark::State& state) {
  ScenarioConfig cfg = calrank::default_config(Setting::canonical);
  cfg.trials = 200000;
  run(state, cfg, calrank::run_canonical_scenario);
}

void BM_abtest(benchmark::State& state) {
  ScenarioConfig cfg = calrank::default_config(Setting::abtest);
  cfg.calibration = "incremental";
  cfg.m_values = {8};
  cfg.trials = 100000;
  run(state, cfg, calrank::run_abtest_scenario);
}

void BM_ranking(benchmark::State& state) {
  ScenarioConfig cfg = calrank::default_config(Setting::ranking);
  cfg.n_values = {8};
  cfg.estimators = {"index-ties", "cardinal", "metric"};
  cfg.trials = 20;
  cfg.inner_samples = 200;
  run(state, cfg, calrank::run_ranking_experiment);
}

}  // namespace

BENCHMARK(BM_canonical)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_abtest)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ranking)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
