#include <benchmark/benchmark.h>

#include "ladderlab/fermat_scan.hpp"
#include "ladderlab/gram_system.hpp"
#include "ladderlab/zeta_core.hpp"

using namespace ladderlab;

static void BM_Z(benchmark::State& state) {
  double t = static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(z_value(t));
    t += 0.013;
  }
}
BENCHMARK(BM_Z)->Arg(200)->Arg(10000)->Arg(1000000)->Arg(9000000);

static void BM_IntegrateZ2(benchmark::State& state) {
  const double T = static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(integrate_z2(Interval::make(T, T + 100.0)));
  }
}
BENCHMARK(BM_IntegrateZ2)->Arg(10000)->Arg(1000000)->Unit(benchmark::kMillisecond);

static void BM_SolveG(benchmark::State& state) {
  long nu = 100000;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_g(nu++, 0.5));
  }
}
BENCHMARK(BM_SolveG);

static void BM_FermatValue(benchmark::State& state) {
  unsigned long x = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(fermat_value(x % 50 + 1, 37, 41, 12));
    ++x;
  }
}
BENCHMARK(BM_FermatValue);
BENCHMARK_MAIN();
