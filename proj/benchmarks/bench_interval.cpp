#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "tbcp/interval.hpp"
#include "tbcp/interval_matrix.hpp"

namespace {

std::vector<tbcp::Interval> operands(std::size_t n) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.5, 2.0);
  std::vector<tbcp::Interval> v;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = u(rng);
    v.emplace_back(a, a + 1e-3);
  }
  return v;
}

template <class Op>
void binary(benchmark::State& state, Op op) {
  const auto v = operands(1024);
  for (auto _ : state) {
    tbcp::Interval acc(1.0);
    for (std::size_t i = 0; i + 1 < v.size(); ++i) benchmark::DoNotOptimize(acc = op(v[i], v[i + 1]));
  }
  state.SetItemsProcessed(state.iterations() * 1023);
}

void BM_IntervalAdd(benchmark::State& s) { binary(s, [](auto a, auto b) { return a + b; }); }
void BM_IntervalMul(benchmark::State& s) { binary(s, [](auto a, auto b) { return a * b; }); }
void BM_IntervalDiv(benchmark::State& s) { binary(s, [](auto a, auto b) { return a / b; }); }
void BM_IntervalSqrt(benchmark::State& s) { binary(s, [](auto a, auto) { return sqrt(a); }); }

void BM_InverseNormBound(benchmark::State& state) {
  const auto n = static_cast<Eigen::Index>(state.range(0));
  const Eigen::MatrixXd m = Eigen::MatrixXd::Random(n, n) + 4.0 * Eigen::MatrixXd::Identity(n, n);
  const tbcp::IntervalMatrix im = tbcp::IntervalMatrix::fromPoint(m);
  for (auto _ : state) benchmark::DoNotOptimize(tbcp::verifiedInverseNormBound(im));
}

}  // namespace

BENCHMARK(BM_IntervalAdd);
BENCHMARK(BM_IntervalMul);
BENCHMARK(BM_IntervalDiv);
BENCHMARK(BM_IntervalSqrt);
BENCHMARK(BM_InverseNormBound)->Arg(50)->Arg(200)->Arg(800)->Unit(benchmark::kMillisecond);
