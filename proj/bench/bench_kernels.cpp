// Serial reference kernels against their OpenMP versions.
#include <benchmark/benchmark.h>

#include <random>

#include "hyperlap/kernels.hpp"
#include "hyperlap/opcalc.hpp"

using namespace hyperlap;
using namespace hyperlap::kernels;

namespace {

NumericPoly laplacian_symbol() { return NumericPoly{2, {{2, 0}, {0, 2}}, {1.0, 1.0}}; }

const std::vector<CVector>& grid() {
  static const std::vector<CVector> g = projective_grid(2, 0.01).directions;
  return g;
}

void BM_AbsScanSerial(benchmark::State& st) {
  const NumericPoly p = laplacian_symbol();
  for (auto _ : st) benchmark::DoNotOptimize(abs_scan_serial(p, grid()));
  st.SetItemsProcessed(st.iterations() * static_cast<long>(grid().size()));
}
void BM_AbsScanParallel(benchmark::State& st) {
  const NumericPoly p = laplacian_symbol();
  for (auto _ : st) benchmark::DoNotOptimize(abs_scan_parallel(p, grid()));
  st.SetItemsProcessed(st.iterations() * static_cast<long>(grid().size()));
}
void BM_MinAbsSerial(benchmark::State& st) {
  const NumericPoly p = laplacian_symbol();
  for (auto _ : st) benchmark::DoNotOptimize(min_abs_serial(p, grid()));
}
void BM_MinAbsParallel(benchmark::State& st) {
  const NumericPoly p = laplacian_symbol();
  for (auto _ : st) benchmark::DoNotOptimize(min_abs_parallel(p, grid()));
}

struct ExpData {
  std::vector<cplx> c, r, z;
  explicit ExpData(std::size_t m) : c(64), r(64), z(m) {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (std::size_t k = 0; k < c.size(); ++k) {
      c[k] = {u(rng), u(rng)};
      r[k] = {u(rng), 5 * u(rng)};
    }
    for (auto& v : z) v = {u(rng), u(rng)};
  }
};

void BM_ExpSumSerial(benchmark::State& st) {
  ExpData d(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(exp_sum_serial(d.c, d.r, d.z));
}
void BM_ExpSumParallel(benchmark::State& st) {
  ExpData d(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(exp_sum_parallel(d.c, d.r, d.z));
}

std::vector<CVector> zeta_grid() {
  std::vector<CVector> zs;
  for (int i = 0; i < 16; ++i) zs.push_back({cplx(1.5 + 0.25 * i, 0.5 * (i % 5) - 1.0)});
  return zs;
}
void BM_ForwardGridSerial(benchmark::State& st) {
  const Hyperfunction u = heaviside_exp(cplx(0.5, 1.0), 0.2);
  const auto zs = zeta_grid();
  for (auto _ : st) benchmark::DoNotOptimize(forward_grid_serial(u, zs));
}
void BM_ForwardGridParallel(benchmark::State& st) {
  const Hyperfunction u = heaviside_exp(cplx(0.5, 1.0), 0.2);
  const auto zs = zeta_grid();
  for (auto _ : st) benchmark::DoNotOptimize(forward_grid_parallel(u, zs));
}

}  // namespace

BENCHMARK(BM_AbsScanSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AbsScanParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_MinAbsSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MinAbsParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ExpSumSerial)->Arg(1 << 12)->Arg(1 << 16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExpSumParallel)->Arg(1 << 12)->Arg(1 << 16)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ForwardGridSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ForwardGridParallel)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
