#include <benchmark/benchmark.h>

#include "tbcp/normbound.hpp"
#include "tbcp/solver.hpp"
#include "tbcp/validate.hpp"

namespace {

// Linearization about the first 1D branch solution at λ = 50.
const tbcp::CandidateEquilibrium& solution1d() {
  static const tbcp::CandidateEquilibrium s = [] {
    tbcp::ModelParams p;
    p.dim = 1;
    p.sigma = 6.0;
    p.lambda = 50.0;
    p.mass = tbcp::MassVector::fromTriple(0.5, 0.4, 0.1);
    return tbcp::solveFromKernel(p, tbcp::KernelSeed{}, 64).solution;
  }();
  return s;
}

void BM_AssembleBTilde(benchmark::State& state) {
  const auto& s = solution1d();
  const auto spec = tbcp::buildLinearizationSpec(s.params, s.w, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(tbcp::assembleBTilde(spec));
}

void BM_ComputeKN(benchmark::State& state) {
  const auto& s = solution1d();
  const auto spec = tbcp::buildLinearizationSpec(s.params, s.w, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(tbcp::computeKN(spec));
}

void BM_LipschitzConstants(benchmark::State& state) {
  const auto& s = solution1d();
  for (auto _ : state) benchmark::DoNotOptimize(tbcp::lipschitzConstants(s.params, s.w, 0.1, 0.5));
}

}  // namespace

BENCHMARK(BM_AssembleBTilde)->Arg(64)->Arg(172)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ComputeKN)->Arg(64)->Arg(172)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LipschitzConstants)->Unit(benchmark::kMicrosecond);
