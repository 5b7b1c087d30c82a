#include <benchmark/benchmark.h>

#include "qhblow/flow.hpp"
#include "qhblow/scenarios.hpp"

using namespace qhblow;

static void BM_GlobalFieldEval(benchmark::State& state) {
  Scenario sc = keyfitz_kranzer();
  const DesingField& f = *sc.global_field;
  Vec x{0.4, 0.2};
  for (auto _ : state) benchmark::DoNotOptimize(f.eval(x));
}
BENCHMARK(BM_GlobalFieldEval);

static void BM_PolarFieldEval(benchmark::State& state) {
  Scenario sc = keyfitz_kranzer();
  const DesingField& f = *sc.polar_field;
  Vec st{0.3, 1.1};
  for (auto _ : state) benchmark::DoNotOptimize(f.eval(st));
}
BENCHMARK(BM_PolarFieldEval);

static void BM_RadialCorrection(benchmark::State& state) {
  Scenario sc = keyfitz_kranzer();
  Vec x{0.4, 0.2};
  for (auto _ : state)
    benchmark::DoNotOptimize(radial_correction(*sc.global_field, x));
}
BENCHMARK(BM_RadialCorrection);

static void BM_IntegrateToEquilibrium(benchmark::State& state) {
  Scenario sc = keyfitz_kranzer();
  const DesingField& f = *sc.global_field;
  auto eqs = find_horizon_equilibria(f);
  Vec start = compactify(f.scheme, {1.0, 0.3});
  for (auto _ : state)
    benchmark::DoNotOptimize(integrate(f, start, 60.0, {}, &eqs));
}
BENCHMARK(BM_IntegrateToEquilibrium);

static void BM_FindHorizonEquilibria(benchmark::State& state) {
  Scenario sc = keyfitz_kranzer();
  for (auto _ : state)
    benchmark::DoNotOptimize(find_horizon_equilibria(*sc.global_field));
}
BENCHMARK(BM_FindHorizonEquilibria);

static void BM_BuildTrigTable(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(build_table(2));
}
BENCHMARK(BM_BuildTrigTable);

BENCHMARK_MAIN();
