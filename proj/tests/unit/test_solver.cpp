#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "tbcp/solver.hpp"

using namespace tbcp;

namespace {

ModelParams params1d(double lambda) {
  ModelParams p;
  p.dim = 1;
  p.sigma = 6.0;
  p.lambda = lambda;
  p.mass = MassVector::fromTriple(0.5, 0.4, 0.1);
  return p;
}

FieldPair<double> zeroPair(int dim, int n) { return {CosineField(dim, n), CosineField(dim, n)}; }

}  // namespace

TEST_CASE("Jacobian matches finite differences") {
  std::mt19937_64 rng(1);
  for (int d = 1; d <= 2; ++d) {
    ModelParams p = params1d(30.0);
    p.dim = d;
    const int n = d == 1 ? 10 : 5;
    const GalerkinLayout layout(d, n);
    FieldPair<double> w{0.05 * oracle::randomField(rng, d, n, true), 0.05 * oracle::randomField(rng, d, n, true)};
    const Eigen::MatrixXd J = galerkinJacobian(p, w, n);
    const Eigen::VectorXd x = layout.pack(w);
    REQUIRE(J.rows() == layout.size());
    const double h = 1e-6;
    for (Eigen::Index c = 0; c < x.size(); c += 3) {
      Eigen::VectorXd xp = x, xm = x;
      xp(c) += h;
      xm(c) -= h;
      const Eigen::VectorXd fd =
          (galerkinResidual(p, layout.unpack(xp), n) - galerkinResidual(p, layout.unpack(xm), n)) / (2 * h);
      CHECK((fd - J.col(c)).norm() <= 1e-5 * std::max(1.0, J.col(c).norm()));
    }
  }
}

TEST_CASE("homogeneous Jacobian spectrum") {
  const ModelParams p = params1d(50.0);
  const int n = 21;
  const Eigen::MatrixXd J = galerkinJacobian(p, zeroPair(1, n), n);
  Eigen::EigenSolver<Eigen::MatrixXd> es(J);
  std::vector<double> got, want;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    CHECK(std::fabs(es.eigenvalues()(i).imag()) < 1e-8);
    got.push_back(es.eigenvalues()(i).real());
  }
  for (int k = 1; k < n; ++k) {
    for (int j = 1; j <= 2; ++j) want.push_back(p.lambda * lambdaJK(j, MultiIndex{k}, 1.0 / p.lambda, p.sigma, p.mass));
  }
  std::sort(got.begin(), got.end());
  std::sort(want.begin(), want.end());
  REQUIRE(got.size() == want.size());
  for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-8));
}

TEST_CASE("Newton from zero stays at zero") {
  const ModelParams p = params1d(50.0);
  const NewtonResult r = newtonSolve(p, zeroPair(1, 16), 16);
  REQUIRE(r.converged());
  CHECK(r.iterations <= 1);
  CHECK(solutionNorm(r.solution.w) == 0.0);
}

TEST_CASE("kernel seeding reaches a nontrivial branch") {
  const ModelParams p = params1d(50.0);
  const double lc = bifurcationLambda(p, 1, MultiIndex{1});
  CHECK(lc > 0);
  CHECK(lc < 50.0);
  const NewtonResult r = solveFromKernel(p, KernelSeed{1, MultiIndex{1}, 0.05}, 48);
  REQUIRE(r.converged());
  CHECK(solutionNorm(r.solution.w) > 0.01);
  CHECK(r.solution.residualNorm < 1e-8);
  CHECK(r.solution.w[0].isZeroMean());
  CHECK(r.solution.w[1].isZeroMean());

  SUBCASE("truncated Morse index agrees with the full count") {
    const Eigen::MatrixXd J = galerkinJacobian(p, r.solution.w, 48);
    Eigen::EigenSolver<Eigen::MatrixXd> es(J, false);
    int full = 0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) full += es.eigenvalues()(i).real() > 0;
    CHECK(morseIndex(p, r.solution.w, 48) == full);
  }
  SUBCASE("reflection gives a second solution") {
    const FieldPair<double> m = reflect(r.solution.w, 0);
    const Eigen::VectorXd res = galerkinResidual(p, m, 48);
    CHECK(residualNormY(GalerkinLayout(1, 48), res) < 1e-8);
    CHECK(xDistance(m, r.solution.w).lo() > 0.0);
  }
}

TEST_CASE("continuation follows the branch") {
  const ModelParams p = params1d(1.01 * bifurcationLambda(params1d(1.0), 1, MultiIndex{1}));
  const NewtonResult r = solveFromKernel(p, KernelSeed{1, MultiIndex{1}, 0.05}, 32);
  REQUIRE(r.converged());
  const Branch b = continueBranch(r.solution, p.lambda + 5.0);
  CHECK(b.reachedEnd);
  REQUIRE(b.points.size() >= 2);
  for (std::size_t i = 1; i < b.points.size(); ++i) {
    CHECK(b.points[i].lambda > b.points[i - 1].lambda);
    CHECK(b.points[i].solutionNorm > 0.0);
  }
}

TEST_CASE("layout round trip and distances") {
  std::mt19937_64 rng(2);
  const GalerkinLayout layout(2, 4);
  FieldPair<double> w{oracle::randomField(rng, 2, 4, true), oracle::randomField(rng, 2, 4, true)};
  const FieldPair<double> back = layout.unpack(layout.pack(w));
  CHECK(back[0] == w[0]);
  CHECK(back[1] == w[1]);
  CHECK(xDistance(w, w).hi() == 0.0);
  const Interval d = xDistance(w, zeroPair(2, 4));
  const double ref = std::sqrt(std::pow(hBarNorm(w[0], 2).mid(), 2) + std::pow(hBarNorm(w[1], 2).mid(), 2));
  CHECK(d.contains(ref));
}
