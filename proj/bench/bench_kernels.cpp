#include "cuspforge/contour.hpp"
#include "cuspforge/kloosterman.hpp"

#include <benchmark/benchmark.h>

namespace {

void phi_scan_bench(benchmark::State& st, bool parallel) {
  cf::HomologyContext h(cf::from_fermat(static_cast<int>(st.range(0))));
  const int c_max = static_cast<int>(st.range(1));
  const int j = h.ct.inf_of[0];
  for (auto _ : st) {
    auto s = cf::phi_scan(h.d, h.ct, j, j, c_max, parallel);
    benchmark::DoNotOptimize(s.reps.data());
  }
}

void BM_PhiScanSerial(benchmark::State& st) { phi_scan_bench(st, false); }
void BM_PhiScanParallel(benchmark::State& st) { phi_scan_bench(st, true); }

void contour_bench(benchmark::State& st, bool parallel) {
  cf::TruncationParams p;
  p.quad_steps = static_cast<int>(st.range(1));
  for (auto _ : st) {
    auto at = cf::contour_atoms(static_cast<int>(st.range(0)), cf::Side::Plus, p, parallel);
    benchmark::DoNotOptimize(at.dlog.data());
  }
}

void BM_ContourSerial(benchmark::State& st) { contour_bench(st, false); }
void BM_ContourParallel(benchmark::State& st) { contour_bench(st, true); }

}  // namespace

BENCHMARK(BM_PhiScanSerial)->Args({1, 64})->Args({3, 64})->Args({5, 48})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PhiScanParallel)->Args({1, 64})->Args({3, 64})->Args({5, 48})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ContourSerial)->Args({3, 256})->Args({3, 1024})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ContourParallel)->Args({3, 256})->Args({3, 1024})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
