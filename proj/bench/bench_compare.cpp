// Serial vs OpenMP comparison for the embarrassingly parallel batches: the
// Bieri-Strebel ray sweep and the oracle case suites. Both paths compute
// identical results (asserted in the unit tests); this target measures them.

#include <benchmark/benchmark.h>

#include "cbcalc/oracle.hpp"
#include "cbcalc/sigma.hpp"

using namespace cbcalc;

namespace {

void bm_sweep(benchmark::State& state, bool parallel) {
  sigma::BSModule m = sigma::BSModule::classical();
  auto rays = sigma::standard_ray_sweep(360);
  for (auto _ : state) {
    auto verdicts = sigma::sweep_rays(m, rays, 12, parallel);
    benchmark::DoNotOptimize(verdicts);
  }
}

void bm_ext_bounds(benchmark::State& state, bool parallel) {
  for (auto _ : state) {
    oracle::Report r = oracle::check_ext_bounds(200, 20260810, parallel);
    benchmark::DoNotOptimize(r);
  }
}

void bm_ordinal_laws(benchmark::State& state, bool parallel) {
  for (auto _ : state) {
    oracle::Report r = oracle::recheck_ordinal_laws(20000, 20260810, 64, parallel);
    benchmark::DoNotOptimize(r);
  }
}

void sweep_serial(benchmark::State& s) { bm_sweep(s, false); }
void sweep_openmp(benchmark::State& s) { bm_sweep(s, true); }
void ext_bounds_serial(benchmark::State& s) { bm_ext_bounds(s, false); }
void ext_bounds_openmp(benchmark::State& s) { bm_ext_bounds(s, true); }
void ordinal_laws_serial(benchmark::State& s) { bm_ordinal_laws(s, false); }
void ordinal_laws_openmp(benchmark::State& s) { bm_ordinal_laws(s, true); }

BENCHMARK(sweep_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(sweep_openmp)->Unit(benchmark::kMillisecond);
BENCHMARK(ext_bounds_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(ext_bounds_openmp)->Unit(benchmark::kMillisecond);
BENCHMARK(ordinal_laws_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(ordinal_laws_openmp)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
