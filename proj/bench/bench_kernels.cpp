// Serial reference vs OpenMP kernels on coordinate arrays.
#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

#include "ordiff/kernels.hpp"

namespace {

std::vector<double> data(std::size_t n) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> nd;
  std::vector<double> v(n);
  for (auto& x : v) x = nd(rng);
  return v;
}

auto cube_sine = [](double t) { return std::sin(t * t * t); };

void BM_TransformSerial(benchmark::State& st) {
  const auto in = data(st.range(0));
  std::vector<double> out(in.size());
  for (auto _ : st) {
    ordiff::kernels::serial::transform(in, out, cube_sine);
    benchmark::DoNotOptimize(out.data());
  }
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_TransformParallel(benchmark::State& st) {
  const auto in = data(st.range(0));
  std::vector<double> out(in.size());
  for (auto _ : st) {
    ordiff::kernels::parallel::transform(in, out, cube_sine);
    benchmark::DoNotOptimize(out.data());
  }
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_PowSumSerial(benchmark::State& st) {
  const auto in = data(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(ordiff::kernels::serial::pow_sum(in, 1.5, 1.0, true));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_PowSumParallel(benchmark::State& st) {
  const auto in = data(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(ordiff::kernels::parallel::pow_sum(in, 1.5, 1.0, true));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

}  // namespace

BENCHMARK(BM_TransformSerial)->RangeMultiplier(8)->Range(1 << 10, 1 << 22)->UseRealTime();
BENCHMARK(BM_TransformParallel)->RangeMultiplier(8)->Range(1 << 10, 1 << 22)->UseRealTime();
BENCHMARK(BM_PowSumSerial)->RangeMultiplier(8)->Range(1 << 10, 1 << 22)->UseRealTime();
BENCHMARK(BM_PowSumParallel)->RangeMultiplier(8)->Range(1 << 10, 1 << 22)->UseRealTime();

BENCHMARK_MAIN();
