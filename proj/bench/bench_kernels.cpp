// Serial reference vs OpenMP kernels, and naive vs sorted rank computation.
#include <benchmark/benchmark.h>

#include "lexorank/blocks.hpp"
#include "lexorank/measure.hpp"
#include "lexorank/sim.hpp"

namespace {

using namespace lexorank;

const WeightedAlphabet kBinary = WeightedAlphabet::finite({0.5, 0.5});

void BM_EnumerateSerial(benchmark::State& state) {
  EnumerationOptions options;
  options.parallel = false;
  for (auto _ : state) {
    benchmark::DoNotOptimize(summarize_measure(kBinary, state.range(0), options).prob_W);
  }
}
BENCHMARK(BM_EnumerateSerial)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_EnumerateParallel(benchmark::State& state) {
  EnumerationOptions options;
  options.parallel = true;
  for (auto _ : state) {
    benchmark::DoNotOptimize(summarize_measure(kBinary, state.range(0), options).prob_W);
  }
}
BENCHMARK(BM_EnumerateParallel)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

ExperimentConfig sim_config(std::size_t n) {
  ExperimentConfig config;
  config.n_values = {n};
  config.samples_per_n = 2000;
  config.seed = 7;
  return config;
}

void BM_SimulateSerial(benchmark::State& state) {
  const auto config = sim_config(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_experiment_serial(config).records.size());
}
BENCHMARK(BM_SimulateSerial)->Arg(128)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_SimulateParallel(benchmark::State& state) {
  const auto config = sim_config(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_experiment(config).records.size());
}
BENCHMARK(BM_SimulateParallel)->Arg(128)->Arg(1024)->Unit(benchmark::kMillisecond);

template <RankMethod method>
void BM_Ranks(benchmark::State& state) {
  Rng rng = stream_rng(11, state.range(0), 0);
  const Word w = sample_W(kBinary, state.range(0), rng);
  for (auto _ : state) benchmark::DoNotOptimize(ranks(w, method));
}
BENCHMARK(BM_Ranks<RankMethod::Naive>)->Arg(256)->Arg(2048);
BENCHMARK(BM_Ranks<RankMethod::Sorted>)->Arg(256)->Arg(2048);

}  // namespace

BENCHMARK_MAIN();
