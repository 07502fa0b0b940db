#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "tbcp/interval_matrix.hpp"

using namespace tbcp;

TEST_CASE("diag(2, 4) inverse bound") {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(2, 2);
  d(0, 0) = 2.0;
  d(1, 1) = 4.0;
  const InverseNormCertificate c = verifiedInverseNormBound(IntervalMatrix::fromPoint(d));
  REQUIRE(c.success);
  CHECK(c.bound >= 0.5);
  CHECK(c.bound - 0.5 < 1e-8);
  CHECK(verified2NormUpperBound(d) >= 4.0);
  CHECK(verified2NormUpperBound(d) < 4.0 + 1e-8);
}

TEST_CASE("norm bounds dominate the SVD on random matrices") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> size(1, 30);
  for (int t = 0; t < 60; ++t) {
    const int n = size(rng);
    Eigen::MatrixXd m = Eigen::MatrixXd::Random(n, n) + 2.0 * Eigen::MatrixXd::Identity(n, n);
    CHECK(verified2NormUpperBound(m) >= oracle::svdNorm(m));
    const InverseNormCertificate c = verifiedInverseNormBound(IntervalMatrix::fromPoint(m));
    if (c.success) CHECK(c.bound >= oracle::svdInverseNorm(m));
  }
}

TEST_CASE("interval inputs bound every member") {
  std::mt19937_64 rng(5);
  const int n = 8;
  Eigen::MatrixXd m = Eigen::MatrixXd::Random(n, n) + 4.0 * Eigen::MatrixXd::Identity(n, n);
  IntervalMatrix im(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) im(i, j) = Interval(m(i, j) - 1e-3, m(i, j) + 1e-3);
  const InverseNormCertificate c = verifiedInverseNormBound(im);
  REQUIRE(c.success);
  const double bound = verified2NormUpperBound(im);
  std::uniform_real_distribution<double> u(-1e-3, 1e-3);
  for (int t = 0; t < 50; ++t) {
    Eigen::MatrixXd p = m;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) p(i, j) += u(rng);
    CHECK(c.bound >= oracle::svdInverseNorm(p));
    CHECK(bound >= oracle::svdNorm(p));
  }
}

TEST_CASE("singular matrices are not certified") {
  Eigen::MatrixXd m = Eigen::MatrixXd::Ones(3, 3);
  const InverseNormCertificate c = verifiedInverseNormBound(IntervalMatrix::fromPoint(m));
  CHECK_FALSE(c.success);
  CHECK_FALSE(c.message.empty());
}

TEST_CASE("identity and accessors") {
  const IntervalMatrix id = IntervalMatrix::identity(3);
  CHECK(id(1, 1) == Interval(1.0));
  CHECK(id(0, 2) == Interval(0.0));
  CHECK(id.midpoint().isIdentity());
  CHECK(id.radius().isZero());
}
