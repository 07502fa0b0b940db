#include <benchmark/benchmark.h>

#include "tbcp/solver.hpp"

namespace {

tbcp::ModelParams params(int dim) {
  tbcp::ModelParams p;
  p.dim = dim;
  p.sigma = 6.0;
  p.lambda = dim == 1 ? 50.0 : 10.0;
  p.mass = dim == 1 ? tbcp::MassVector::fromTriple(0.5, 0.4, 0.1) : tbcp::MassVector::fromTriple(0.3, 0.2, 0.5);
  return p;
}

void BM_GalerkinJacobian(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0)), n = static_cast<int>(state.range(1));
  const auto p = params(dim);
  const auto w = tbcp::seedFromKernel(p, 1, dim == 1 ? tbcp::MultiIndex{1} : tbcp::MultiIndex{2, 0}, 0.05, n);
  for (auto _ : state) benchmark::DoNotOptimize(tbcp::galerkinJacobian(p, w, n));
}

void BM_NewtonFromKernel1d(benchmark::State& state) {
  const auto p = params(1);
  tbcp::NewtonSettings ns;
  ns.computeIndex = false;
  for (auto _ : state) benchmark::DoNotOptimize(tbcp::solveFromKernel(p, tbcp::KernelSeed{}, 96, ns));
}

}  // namespace

BENCHMARK(BM_GalerkinJacobian)->Args({1, 96})->Args({2, 24})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_NewtonFromKernel1d)->Unit(benchmark::kMillisecond);
