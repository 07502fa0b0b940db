#include <random>

#include <benchmark/benchmark.h>

#include "tbcp/spectral.hpp"

namespace {

tbcp::CosineField field(int dim, int n) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  tbcp::CosineField f(dim, n);
  for (auto& c : f.coeffs()) c = u(rng);
  return f;
}

void BM_Product(benchmark::State& state) {
  const auto dim = static_cast<int>(state.range(0)), n = static_cast<int>(state.range(1));
  const auto a = field(dim, n), b = field(dim, n);
  for (auto _ : state) benchmark::DoNotOptimize(tbcp::product(a, b));
}

void BM_IntervalProduct(benchmark::State& state) {
  const auto dim = static_cast<int>(state.range(0)), n = static_cast<int>(state.range(1));
  const auto a = tbcp::toInterval(field(dim, n)), b = tbcp::toInterval(field(dim, n));
  for (auto _ : state) benchmark::DoNotOptimize(tbcp::product(a, b));
}

void BM_SupNormBound(benchmark::State& state) {
  const auto f = tbcp::toInterval(field(2, static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(tbcp::supNormUpperBound(f));
}

}  // namespace

BENCHMARK(BM_Product)->Args({1, 96})->Args({2, 24});
BENCHMARK(BM_IntervalProduct)->Args({1, 96})->Args({2, 24})->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_SupNormBound)->Arg(24);
