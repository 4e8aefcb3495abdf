// Serial versus OpenMP throughput of dataset generation and agent evaluation.
#include <benchmark/benchmark.h>

#include "pragworld/agents.hpp"
#include "pragworld/episode.hpp"

using namespace pragworld;

namespace {

DatasetOptions options(std::size_t n) {
  DatasetOptions o;
  o.n = n;
  o.seed = 9;
  return o;
}

const std::vector<EpisodeSpec>& episodes() {
  static const auto eps = generate_dataset_parallel(options(16));
  return eps;
}

void BM_GenerateSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(generate_dataset_serial(options(static_cast<std::size_t>(state.range(0)))));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_GenerateParallel(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(generate_dataset_parallel(options(static_cast<std::size_t>(state.range(0)))));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_EvalSerial(benchmark::State& state) {
  const auto kind = static_cast<AgentKind>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_all_serial(kind, episodes(), Observability::full, 1));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(episodes().size()));
}

void BM_EvalParallel(benchmark::State& state) {
  const auto kind = static_cast<AgentKind>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_all_parallel(kind, episodes(), Observability::full, 1));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(episodes().size()));
}

void warm(const benchmark::State&) { episodes(); }

}  // namespace

BENCHMARK(BM_GenerateSerial)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_GenerateParallel)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_EvalSerial)->Setup(warm)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_EvalParallel)->Setup(warm)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
