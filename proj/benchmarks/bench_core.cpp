// ============================================================================
// bench_core.cpp -- microbenchmarks for the hot paths
// ============================================================================
#include <benchmark/benchmark.h>

#include <vector>

#include "byzfuse/belief.hpp"
#include "byzfuse/harness.hpp"
#include "byzfuse/model.hpp"

using namespace byzfuse;

static void BM_AveragedHumanRoc(benchmark::State& state) {
  const SignalModel m;
  const HumanThresholdDist d;
  for (auto _ : state) benchmark::DoNotOptimize(averaged_human_roc(d, m));
}
BENCHMARK(BM_AveragedHumanRoc);

static void BM_HumanStep(benchmark::State& state) {
  const auto sensors = static_cast<int>(state.range(0));
  HumanState h;
  for (int i = 0; i < sensors; ++i) h.connected.push_back(i);
  h.beta = 0.89;
  h.gamma = 0.21;
  const auto rates = report_rates(operating_point_for_lr_threshold(2.0, {}));
  std::vector<SensorInput> in(sensors, SensorInput{1, rates, false});
  for (std::size_t k = 0; k < in.size(); k += 2) in[k].report = 0;
  for (auto _ : state) {
    human_window_init(h, 0.5, 0.5);
    human_first_step(h, 1, 1.0);
    for (int t = 1; t < 10; ++t) benchmark::DoNotOptimize(human_step(h, 1, in, 1.0));
  }
  state.SetItemsProcessed(state.iterations() * 9 * sensors);
}
BENCHMARK(BM_HumanStep)->Arg(3)->Arg(9)->Arg(30);

static void BM_Window(benchmark::State& state) {
  ExperimentConfig cfg;
  cfg.alpha = 0.5;
  if (state.range(0)) {
    cfg.topology.kind = TopologyKind::random_bipartite;
    cfg.topology.sensor_degree = 3;
  }
  const RunContext ctx = RunContext::from_config(cfg);
  Rng rng = make_stream(1, 0);
  World world = make_world(ctx, rng);
  Bit h = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_window(world, ctx, h, rng));
    h ^= 1;
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Window)->Arg(0)->Arg(1);

static void BM_Experiment(benchmark::State& state) {
  ExperimentConfig cfg;
  cfg.trials = 4;
  cfg.windows = 50;
  for (auto _ : state) benchmark::DoNotOptimize(run_experiment(cfg, {1}));
  state.SetItemsProcessed(state.iterations() * cfg.trials * cfg.windows);
}
BENCHMARK(BM_Experiment)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
