#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "tbcp/spectral.hpp"

using namespace tbcp;

namespace {

double h2Bar(const CosineField& u) { return hBarNorm(u, 2).hi(); }

}  // namespace

TEST_CASE("multi-indices") {
  const MultiIndex k{3, 0, 4};
  CHECK(k.dim() == 3);
  CHECK(k.normSq() == 25);
  CHECK(k.infNorm() == 4);
  CHECK(k.nonzeroCount() == 2);
  CHECK(multiIndicesBelow(2, 3).size() == 9);
  CHECK(MultiIndex::zero(2).isZero());
}

TEST_CASE("product matches quadrature") {
  std::mt19937_64 rng(3);
  for (int d = 1; d <= 2; ++d) {
    for (int t = 0; t < 20; ++t) {
      const CosineField u = oracle::randomField(rng, d, 6), v = oracle::randomField(rng, d, 4);
      const CosineField p = product(u, v);
      CHECK(p.degreeBound() == 9);
      for (std::size_t f = 0; f < p.size(); ++f) {
        const MultiIndex k = p.multiIndex(f);
        const double q = oracle::project(
            [&](const std::vector<double>& x) { return oracle::fieldValue(u, x) * oracle::fieldValue(v, x); }, k, 16);
        REQUIRE(std::fabs(p.coeffs()[f] - q) < 1e-10);
      }
    }
  }
}

TEST_CASE("interval product encloses the point product") {
  std::mt19937_64 rng(4);
  const CosineField u = oracle::randomField(rng, 2, 5), v = oracle::randomField(rng, 2, 5);
  const CosineField p = product(u, v);
  const IntervalField ip = product(toInterval(u), toInterval(v));
  for (std::size_t f = 0; f < p.size(); ++f) {
    CHECK(std::fabs(ip.coeffs()[f].mid() - p.coeffs()[f]) <= 1e-13);
  }
}

TEST_CASE("multiplicationEntry agrees with the product") {
  std::mt19937_64 rng(8);
  for (int d = 1; d <= 3; ++d) {
    const CosineField c = oracle::randomField(rng, d, 4);
    for (const MultiIndex& l : multiIndicesBelow(d, 4)) {
      const CosineField cl = product(c, CosineField::basis(d, l));
      for (const MultiIndex& k : multiIndicesBelow(d, 5)) {
        REQUIRE(std::fabs(multiplicationEntry(c, l, k) - cl.coefficient(k)) < 1e-12);
      }
    }
  }
}

TEST_CASE("Laplacian is an isometry from H2bar to L2") {
  std::mt19937_64 rng(9);
  for (int d = 1; d <= 3; ++d) {
    const CosineField u = oracle::randomField(rng, d, 5, true);
    const Interval lhs = hBarNorm(laplacianApply(u), 0);
    const Interval rhs = hBarNorm(u, 2);
    CHECK(std::fabs(lhs.mid() - rhs.mid()) <= 1e-12 * rhs.mid());
    // Pointwise check of −Δφ_k = κ_k φ_k.
    const MultiIndex k = d == 1 ? MultiIndex{3} : (d == 2 ? MultiIndex{1, 2} : MultiIndex{1, 0, 2});
    const CosineField lk = laplacianApply(CosineField::basis(d, k));
    CHECK(lk[k] == doctest::Approx(-M_PI * M_PI * k.normSq()).epsilon(1e-14));
  }
}

TEST_CASE("tail bound holds and is attained at the cutoff mode") {
  std::mt19937_64 rng(10);
  for (int t = 0; t < 50; ++t) {
    const int d = 1 + t % 2;
    const CosineField u = oracle::randomField(rng, d, 9, true);
    const int n = 4;
    CosineField tail = u;
    for (std::size_t f = 0; f < tail.size(); ++f) {
      if (tail.multiIndex(f).infNorm() < n) tail.coeffs()[f] = 0.0;
    }
    CHECK(hBarNorm(tail, 0).hi() <= tailNormBound(u, n, 0, 2).hi());
  }
  const CosineField e = CosineField::basis(1, MultiIndex{5});
  const Interval bound = tailNormBound(e, 5, 0, 2);
  const double exact = 1.0 / (M_PI * M_PI * 25.0) * h2Bar(e);
  CHECK(bound.contains(hBarNorm(e, 0).mid()));
  CHECK(bound.hi() == doctest::Approx(exact).epsilon(1e-14));
}

TEST_CASE("sup-norm bound dominates samples") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> x(0.0, 1.0);
  for (int t = 0; t < 30; ++t) {
    const int d = 1 + t % 3;
    const CosineField u = oracle::randomField(rng, d, 4);
    const double s = supNormUpperBound(u).hi();
    for (int i = 0; i < 100; ++i) {
      std::vector<double> p{x(rng), x(rng), x(rng)};
      p.resize(static_cast<std::size_t>(d));
      REQUIRE(std::fabs(oracle::fieldValue(u, p)) <= s);
    }
  }
}

TEST_CASE("norms of a basis function") {
  const CosineField e = CosineField::basis(2, MultiIndex{1, 1});
  CHECK(hBarNorm(e, 0).contains(1.0));
  CHECK(hBarNorm(e, 2).contains(2.0 * M_PI * M_PI));
  CHECK(hNorm(e, 0).contains(std::sqrt(2.0)));
  CHECK_THROWS(hBarNorm(CosineField::basis(1, MultiIndex{0}), -2));
}

TEST_CASE("grid evaluation matches point evaluation") {
  std::mt19937_64 rng(13);
  const CosineField u = oracle::randomField(rng, 2, 4);
  const std::vector<double> g = evaluateOnGrid(u, 5);
  REQUIRE(g.size() == 25);
  const double xs[2] = {0.3, 0.7};
  CHECK(g[1 * 5 + 3] == doctest::Approx(evaluate(u, xs)).epsilon(1e-12));
  CHECK(evaluate(u, xs) == doctest::Approx(oracle::fieldValue(u, {0.3, 0.7})).epsilon(1e-12));
}
