#include <benchmark/benchmark.h>

#include "swald/cutoffs.hpp"
#include "swald/model.hpp"

namespace {

void bench_static_cutoffs(benchmark::State& state) {
  swald::ModelParams m;
  for (auto _ : state) {
    auto cuts = swald::static_cutoffs(m);
    benchmark::DoNotOptimize(cuts);
  }
}
BENCHMARK(bench_static_cutoffs);

void bench_t_r(benchmark::State& state) {
  swald::ModelParams m;
  swald::SolverControls k;
  for (auto _ : state) {
    double t = swald::t_r(0.5, m, k);
    benchmark::DoNotOptimize(t);
  }
}
BENCHMARK(bench_t_r);

}  // namespace

BENCHMARK_MAIN();
