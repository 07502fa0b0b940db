#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "tbcp/normbound.hpp"
#include "tbcp/solver.hpp"
#include "tbcp/validate.hpp"

using namespace tbcp;

namespace {

IntervalField smallField(std::mt19937_64& rng, int dim, int n, bool zeroMean) {
  return toInterval(0.3 * oracle::randomField(rng, dim, n, zeroMean));
}

LinearOperatorSpec randomSpec(std::mt19937_64& rng, int dim, int m, int n, int N) {
  LinearOperatorSpec s = LinearOperatorSpec::zeros(dim, m, n, N);
  std::uniform_real_distribution<double> u(0.5, 1.5);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) s.alpha[i][j] = Interval(i == j ? 2.0 : 0.1);
  for (int i = 0; i < n; ++i) {
    s.beta[i] = Interval(u(rng));
    for (int j = 0; j < n; ++j) {
      s.gamma[i][j] = Interval(0.5 * u(rng));
      s.cFields[i][j] = smallField(rng, dim, 3, false);
    }
    for (int l = 0; l < m; ++l) {
      s.bFields[i][l] = smallField(rng, dim, 3, true);
      s.aFields[l][i] = smallField(rng, dim, 3, true);
    }
  }
  return s;
}

}  // namespace

TEST_CASE("B columns are the coefficients of L applied to basis vectors") {
  std::mt19937_64 rng(21);
  for (int dim = 1; dim <= 2; ++dim) {
    const LinearOperatorSpec s = randomSpec(rng, dim, 1, 2, dim == 1 ? 8 : 4);
    const IntervalMatrix B = assembleB(s);
    const IntervalMatrix Bt = assembleBTilde(s);
    REQUIRE(B.rows() == s.matrixSize());
    std::vector<std::pair<int, MultiIndex>> basis;  // (slot, mode); slot -1 is the scalar
    basis.emplace_back(-1, MultiIndex::zero(dim));
    for (int i = 0; i < s.n; ++i)
      for (const MultiIndex& k : s.modes(i)) basis.emplace_back(i, k);
    auto scale = [&](const std::pair<int, MultiIndex>& e) { return e.first < 0 ? 1.0 : kappaAs<double>(e.second); };
    for (std::size_t col = 0; col < basis.size(); ++col) {
      OperatorVector x;
      x.scalars.assign(1, 0.0);
      for (int i = 0; i < s.n; ++i) x.fields.emplace_back(dim, s.N + 4);
      if (basis[col].first < 0) x.scalars[0] = 1.0;
      else x.fields[basis[col].first][basis[col].second] = 1.0;
      const OperatorVector y = applyL(s, x);
      for (std::size_t row = 0; row < basis.size(); ++row) {
        const double v = basis[row].first < 0 ? y.scalars[0] : y.fields[basis[row].first].coefficient(basis[row].second);
        const double tol = 1e-10 * std::max(1.0, std::fabs(v));
        REQUIRE(std::fabs(B(row, col).mid() - v) <= tol);
        const double vt = v / (scale(basis[row]) * scale(basis[col]));
        REQUIRE(std::fabs(Bt(row, col).mid() - vt) <= 1e-10 * std::max(1.0, std::fabs(vt)));
      }
    }
  }
}

TEST_CASE("pure fourth-order operator scales to -beta I") {
  LinearOperatorSpec s = LinearOperatorSpec::zeros(1, 0, 1, 12);
  s.beta[0] = Interval(2.0);
  const IntervalMatrix Bt = assembleBTilde(s);
  for (std::size_t i = 0; i < Bt.rows(); ++i)
    for (std::size_t j = 0; j < Bt.cols(); ++j) CHECK(Bt(i, j) == Interval(i == j ? -2.0 : 0.0));
  const InverseBoundReport r = inverseBound(s);
  REQUIRE(r.success);
  CHECK(r.KN == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(r.CT >= 0.5);
  CHECK(r.A == 0.0);
  CHECK(r.B == 0.0);
  CHECK(r.K >= 0.5);
}

TEST_CASE("inverse bound dominates the Galerkin inverse") {
  ModelParams p;
  p.dim = 1;
  p.sigma = 6.0;
  p.lambda = 20.0;
  p.mass = MassVector::fromTriple(0.5, 0.4, 0.1);
  const FieldPair<double> w{CosineField(1, 4), CosineField(1, 4)};
  const LinearOperatorSpec s = buildLinearizationSpec(p, w, 20);
  const InverseBoundReport r = inverseBound(s);
  REQUIRE(r.success);
  CHECK(r.tau < 1.0);
  const Eigen::MatrixXd bt = assembleBTilde(s).midpoint();
  CHECK(r.KN >= oracle::svdInverseNorm(bt));
  CHECK(r.K >= std::max(r.KN, r.CT) / (1.0 - r.tau));
}

TEST_CASE("linearization agrees with the Galerkin Jacobian") {
  std::mt19937_64 rng(22);
  ModelParams p;
  p.dim = 1;
  p.sigma = 6.0;
  p.lambda = 50.0;
  p.mass = MassVector::fromTriple(0.5, 0.4, 0.1);
  const int n = 8, big = 40;
  const FieldPair<double> w{0.05 * oracle::randomField(rng, 1, n, true), 0.05 * oracle::randomField(rng, 1, n, true)};
  const LinearOperatorSpec s = buildLinearizationSpec(p, w, big);
  const GalerkinLayout layout(1, big);
  const Eigen::MatrixXd J = galerkinJacobian(p, w, big);
  OperatorVector x;
  FieldPair<double> v{0.1 * oracle::randomField(rng, 1, n, true), 0.1 * oracle::randomField(rng, 1, n, true)};
  x.fields = {v[0], v[1]};
  const OperatorVector y = applyL(s, x);
  const Eigen::VectorXd ref = J * layout.pack(v);
  const Eigen::VectorXd got = layout.pack({y.fields[0].resized(big), y.fields[1].resized(big)});
  CHECK((ref - got).norm() <= 1e-9 * ref.norm());
}

TEST_CASE("N estimate") {
  CHECK(estimateN(0.0, 0.75) == 1);
  CHECK(estimateN(75.0, 0.75) == 10);
  CHECK(estimateN(75.01, 0.75) == 11);
  for (double b : {1.0, 17.3, 1e4}) {
    const int n = estimateN(b, 0.75);
    CHECK(double(n) * n * 0.75 >= b);
    CHECK(double(n - 1) * (n - 1) * 0.75 < b);
  }
}

TEST_CASE("spec validation") {
  LinearOperatorSpec s = LinearOperatorSpec::zeros(1, 1, 1, 6);
  CHECK_NOTHROW(s.check());
  s.beta[0] = Interval(-1.0);
  CHECK_THROWS_AS(s.check(), std::invalid_argument);
  s.beta[0] = Interval(1.0);
  s.bFields[0][0] = toInterval(CosineField::basis(1, MultiIndex{0}));
  CHECK_THROWS_AS(s.check(), std::invalid_argument);
  s.bFields[0][0] = IntervalField();
  s.aFields[0][0] = toInterval(CosineField::basis(1, MultiIndex{6}));
  CHECK_THROWS_AS(s.check(), std::invalid_argument);
  IndexSet odd;
  odd.stride = {2, 1, 1};
  odd.offset = {1, 0, 0};
  CHECK(odd.contains(MultiIndex{3}));
  CHECK_FALSE(odd.contains(MultiIndex{2}));
}
