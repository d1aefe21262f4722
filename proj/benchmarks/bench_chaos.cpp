#include <benchmark/benchmark.h>

#include <random>

#include "chaosint/chaos_expansion.hpp"
#include "chaosint/fbm.hpp"
#include "chaosint/integrals.hpp"
#include "chaosint/kernel.hpp"
#include "chaosint/kernel_ops.hpp"
#include "chaosint/sde.hpp"

using namespace chaosint;

namespace {

ChaosExpansion filled(Truncation tr, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  ChaosExpansion f(tr);
  for (const auto& a : enumerate_multiindices(tr)) f.set(a, nd(rng));
  return f;
}

void BM_WickProduct(benchmark::State& state) {
  const Truncation tr{static_cast<std::uint32_t>(state.range(0)), static_cast<std::uint32_t>(state.range(1))};
  const auto f = filled(tr, 1), g = filled(tr, 2);
  for (auto _ : state) benchmark::DoNotOptimize(wick_product(f, g));
  state.counters["terms"] = static_cast<double>(tr.size());
}
BENCHMARK(BM_WickProduct)->Args({4, 4})->Args({8, 4})->Args({16, 3});

void BM_ItoIntegral(benchmark::State& state) {
  const auto modes = static_cast<std::uint32_t>(state.range(0));
  const auto eta = brownian_path_integrand(BasisFamily::cosine(1.0), {modes, 3});
  for (auto _ : state) benchmark::DoNotOptimize(ito_integral(eta));
}
BENCHMARK(BM_ItoIntegral)->Arg(8)->Arg(32);

void BM_ChaosEvaluator(benchmark::State& state) {
  const auto f = filled({8, 6}, 3);
  const ChaosEvaluator eval(f);
  std::vector<double> z(8, 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(eval(z));
}
BENCHMARK(BM_ChaosEvaluator);

void BM_FbmKernel(benchmark::State& state) {
  double s = 0.01;
  for (auto _ : state) {
    benchmark::DoNotOptimize(fbm_kernel(0.75, 1.0, s));
    s = s < 0.98 ? s + 0.01 : 0.01;
  }
}
BENCHMARK(BM_FbmKernel);

void BM_MTildeTable(benchmark::State& state) {
  const FbmKernel k(0.75);
  const auto grid = TimeGrid::uniform(1.0, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(m_tilde_table(k, BasisFamily::cosine(1.0), 16, grid.points));
}
BENCHMARK(BM_MTildeTable)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_Picard(benchmark::State& state) {
  const FbmKernel k(0.75);
  const auto grid = TimeGrid::uniform(1.0, 16);
  for (auto _ : state) benchmark::DoNotOptimize(solve_picard(k, BasisFamily::cosine(1.0), {4, 4}, grid));
}
BENCHMARK(BM_Picard)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
