#include <benchmark/benchmark.h>

#include "knapsack/dynamic.hpp"
#include "knapsack/fpras.hpp"
#include "knapsack/instances.hpp"
#include "knapsack/oracles.hpp"
#include "knapsack/sensitivity.hpp"
#include "knapsack/stable.hpp"

namespace {

using namespace knapsack;

Instance bench_instance(std::size_t n, std::uint64_t seed = 97) {
  return gen_random(n, DistSpec::Uniform(0.05, 1.0),
                    DistSpec::Uniform(0.02, 0.4), seed);
}

void BM_FractionalOpt(benchmark::State& state) {
  Instance inst = bench_instance(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(fopt(inst));
}
BENCHMARK(BM_FractionalOpt)->Arg(100)->Arg(1000)->Arg(10000);

void BM_BruteForceOpt(benchmark::State& state) {
  Instance inst = bench_instance(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_opt(inst).value);
}
BENCHMARK(BM_BruteForceOpt)->Arg(12)->Arg(16)->Arg(20);

void BM_StableExactRun(benchmark::State& state) {
  Instance inst = bench_instance(static_cast<std::size_t>(state.range(0)));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    Rng rng(++seed);
    benchmark::DoNotOptimize(stable_knapsack(inst, 0.25, rng).solution);
  }
}
BENCHMARK(BM_StableExactRun)->Arg(10)->Arg(14)->Arg(18);

void BM_Fpras(benchmark::State& state) {
  Instance inst = bench_instance(static_cast<std::size_t>(state.range(0)));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    Rng rng(++seed);
    benchmark::DoNotOptimize(fpras(inst, 0.25, rng).solution);
  }
}
BENCHMARK(BM_Fpras)->Arg(50)->Arg(100)->Arg(200)->Arg(400)
    ->Unit(benchmark::kMillisecond);

void BM_StreamFull(benchmark::State& state) {
  Instance inst = bench_instance(static_cast<std::size_t>(state.range(0)));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    Rng rng(++seed);
    benchmark::DoNotOptimize(
        stream_simulate(inst, 0.25, rng).amortized_recourse);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_StreamFull)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_CoupledGreedySensitivity(benchmark::State& state) {
  Instance inst = bench_instance(static_cast<std::size_t>(state.range(0)));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    Rng rng(++seed);
    benchmark::DoNotOptimize(
        mc_sensitivity_upper(AlgorithmFamily::modified_greedy, inst, 0.25,
                             100, rng)
            .average);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * 100);
}
BENCHMARK(BM_CoupledGreedySensitivity)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_EmdExact(benchmark::State& state) {
  // Two synthetic distributions over single-item solutions.
  auto support = static_cast<std::size_t>(state.range(0));
  EmpiricalDistribution p, q;
  for (std::size_t i = 0; i < support; ++i) {
    double mass = 1.0 / static_cast<double>(support);
    p.support.emplace_back(Solution({static_cast<ItemId>(i + 1)}), mass);
    q.support.emplace_back(Solution({static_cast<ItemId>(2 * i + 1)}), mass);
  }
  for (auto _ : state) benchmark::DoNotOptimize(emd_exact(p, q));
}
BENCHMARK(BM_EmdExact)->Arg(16)->Arg(64)->Arg(128);

}  // namespace

BENCHMARK_MAIN();
