#include <benchmark/benchmark.h>

#include "cartan/frames.hpp"

using namespace cartan;

static void BM_Compose(benchmark::State& state) {
  const Operator a(random_su22(1).matrix());
  const Operator b(random_su22(2).matrix());
  for (auto _ : state) benchmark::DoNotOptimize(compose(a, b));
}
BENCHMARK(BM_Compose);

static void BM_RandomSU22(benchmark::State& state) {
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(random_su22(seed++));
}
BENCHMARK(BM_RandomSU22);

static void BM_CartanDecompose(benchmark::State& state) {
  const GroupElement u = random_su22(7);
  for (auto _ : state) benchmark::DoNotOptimize(cartan_decompose(u));
}
BENCHMARK(BM_CartanDecompose);

static void BM_SandwichSequence(benchmark::State& state) {
  const State a = make_state(Bra2(0.6, 0.8), Sector::Plus);
  const State b = make_state(Bra2(0.8, Complex(0, 0.6)), Sector::Plus);
  const std::vector<MeasurementDevice> seq{big_pi(b, 0), big_pi(a, 0), big_pi(b, 0)};
  for (auto _ : state) benchmark::DoNotOptimize(compose_sequence(seq));
}
BENCHMARK(BM_SandwichSequence);

static void BM_InvarianceReport(benchmark::State& state) {
  Rng rng(3);
  const FrameTransform f = FrameTransform::from_group(random_dyn(rng), "bench");
  FrameInputs in;
  in.states = {make_state(Bra2(0.6, 0.8), Sector::Plus),
               make_state(Bra2(0.8, Complex(0, 0.6)), Sector::Plus),
               make_state(Bra2(Complex(0, 1), 0), Sector::Minus)};
  in.observables = {Observable(Sector::Plus, -1.0, 2.0)};
  for (auto _ : state) benchmark::DoNotOptimize(invariance_report(in, f));
}
BENCHMARK(BM_InvarianceReport);
BENCHMARK_MAIN();
