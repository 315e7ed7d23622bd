#include <benchmark/benchmark.h>

#include "suites.hpp"

using namespace cartan::cli;

static void BM_CheckAllSuites(benchmark::State& state) {
  CheckOptions o;
  o.trials = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(run_all_suites(o));
}
BENCHMARK(BM_CheckAllSuites)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
