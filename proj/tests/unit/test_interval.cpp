#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "doctest.h"
#include "oracles.hpp"
#include "random_intervals.hpp"
#include "tbcp/interval.hpp"

using namespace tbcp;
using oracle::Rational;
using oracle::exact;

namespace {

bool finite(const Interval& x) { return std::isfinite(x.lo()) && std::isfinite(x.hi()); }

template <class Op>
bool enclosesEndpointHull(const Interval& a, const Interval& b, const Interval& r, Op op) {
  const std::array<Rational, 4> v = {op(exact(a.lo()), exact(b.lo())), op(exact(a.lo()), exact(b.hi())),
                                     op(exact(a.hi()), exact(b.lo())), op(exact(a.hi()), exact(b.hi()))};
  const auto [mn, mx] = std::minmax_element(v.begin(), v.end());
  return exact(r.lo()) <= *mn && *mx <= exact(r.hi());
}

}  // namespace

TEST_CASE("construction and accessors") {
  const Interval x(1.0, 3.0);
  CHECK(x.lo() == 1.0);
  CHECK(x.hi() == 3.0);
  CHECK(x.mid() == 2.0);
  CHECK(x.rad() >= 1.0);
  CHECK(x.mag() == 3.0);
  CHECK(Interval(-2.0, 1.0).mig() == 0.0);
  CHECK(Interval(-2.0, -1.0).mig() == 1.0);
  CHECK(Interval(5.0).isPoint());
  CHECK_THROWS_AS(Interval(2.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(Interval(std::nan(""), 1.0), std::invalid_argument);
}

TEST_CASE("exactly representable results stay points") {
  CHECK(Interval(1.5) + Interval(2.25) == Interval(3.75));
  CHECK(Interval(3.0) * Interval(-0.5) == Interval(-1.5));
  CHECK(Interval(1.0) / Interval(4.0) == Interval(0.25));
  CHECK(sqrt(Interval(9.0)) == Interval(3.0));
}

TEST_CASE("inexact results are strictly widened") {
  const Interval third = Interval(1.0) / Interval(3.0);
  CHECK(third.lo() < third.hi());
  CHECK(oracle::contains(third, Rational(1) / 3));
  const Interval tenth = Interval(1.0) / Interval(10.0);
  CHECK(oracle::contains(tenth, Rational(1) / 10));
  const Interval s = Interval(0.1) + Interval(0.2);
  CHECK(oracle::contains(s, exact(0.1) + exact(0.2)));
  CHECK(s.lo() < s.hi());
}

TEST_CASE("sign cases of multiplication and division") {
  const Interval p(1.0, 2.0), n(-3.0, -2.0), z(-1.0, 4.0);
  CHECK(p * n == Interval(-6.0, -2.0));
  CHECK(n * n == Interval(4.0, 9.0));
  CHECK(z * z == Interval(-4.0, 16.0));
  CHECK(z * n == Interval(-12.0, 3.0));
  CHECK((p / n).contains(-0.5));
  CHECK((z / p).contains(Interval(-1.0, 4.0)));
  CHECK_THROWS_AS(p / z, std::domain_error);
  CHECK_THROWS_AS(p / Interval(0.0), std::domain_error);
}

TEST_CASE("elementary functions") {
  CHECK(sqr(Interval(-2.0, 3.0)) == Interval(0.0, 9.0));
  CHECK(sqr(Interval(-3.0, -2.0)) == Interval(4.0, 9.0));
  CHECK(abs(Interval(-2.0, 1.0)) == Interval(0.0, 2.0));
  CHECK(pow(Interval(-2.0, 1.0), 3) == Interval(-8.0, 1.0));
  CHECK(pow(Interval(-2.0, 1.0), 2) == Interval(0.0, 4.0));
  CHECK(pow(Interval(2.0, 3.0), 0) == Interval(1.0));
  CHECK(max(Interval(1.0, 4.0), Interval(2.0, 3.0)) == Interval(2.0, 4.0));
  CHECK(min(Interval(1.0, 4.0), Interval(2.0, 3.0)) == Interval(1.0, 3.0));
  CHECK_THROWS_AS(sqrt(Interval(-1.0, 1.0)), std::domain_error);
  const Interval s2 = sqrt(Interval(2.0));
  CHECK(oracle::contains(sqr(s2), Rational(2)));
  CHECK(exact(s2.lo()) * exact(s2.lo()) <= 2);
  CHECK(exact(s2.hi()) * exact(s2.hi()) >= 2);
}

TEST_CASE("pi and sqrt2 enclosures") {
  using Big = boost::multiprecision::cpp_bin_float_50;
  const Big pi = boost::math::constants::pi<Big>();
  CHECK(Big(Interval::pi().lo()) <= pi);
  CHECK(pi <= Big(Interval::pi().hi()));
  CHECK(Interval::pi().hi() == std::nextafter(Interval::pi().lo(), 4.0));
  const Big s2 = boost::multiprecision::sqrt(Big(2));
  CHECK(Big(Interval::sqrt2().lo()) <= s2);
  CHECK(s2 <= Big(Interval::sqrt2().hi()));
}

TEST_CASE("cosine encloses the range") {
  using Big = boost::multiprecision::cpp_bin_float_50;
  oracle::DoubleSource src(7);
  std::uniform_real_distribution<double> u(-40.0, 40.0), w(0.0, 2.0);
  for (int i = 0; i < 2000; ++i) {
    const double a = u(src.rng());
    const Interval x(a, a + w(src.rng()));
    const Interval c = cos(x);
    for (int j = 0; j <= 16; ++j) {
      const double t = x.lo() + (x.hi() - x.lo()) * j / 16.0;
      const Big v = boost::multiprecision::cos(Big(t));
      REQUIRE(Big(c.lo()) <= v);
      REQUIRE(v <= Big(c.hi()));
    }
  }
  // Extrema inside the argument are captured.
  CHECK(cos(Interval(3.0, 3.3)).lo() == -1.0);
  CHECK(cos(Interval(-0.1, 0.1)).hi() == 1.0);
}

TEST_CASE("randomized containment against exact rationals") {
  oracle::DoubleSource src(2024);
  for (int i = 0; i < 3000; ++i) {
    const Interval a = src.interval(), b = src.interval();
    const Interval s = a + b, d = a - b, p = a * b;
    if (finite(s)) REQUIRE(enclosesEndpointHull(a, b, s, [](const Rational& x, const Rational& y) { return x + y; }));
    if (finite(d)) REQUIRE(enclosesEndpointHull(a, b, d, [](const Rational& x, const Rational& y) { return x - y; }));
    if (finite(p)) REQUIRE(enclosesEndpointHull(a, b, p, [](const Rational& x, const Rational& y) { return x * y; }));
    if (!b.containsZero()) {
      const Interval q = a / b;
      if (finite(q)) {
        REQUIRE(enclosesEndpointHull(a, b, q, [](const Rational& x, const Rational& y) { return x / y; }));
      }
    }
    const Interval m = abs(a);
    const Interval r = sqrt(m);
    REQUIRE(r.lo() >= 0.0);
    REQUIRE(exact(r.lo()) * exact(r.lo()) <= exact(m.lo()));
    REQUIRE(exact(r.hi()) * exact(r.hi()) >= exact(m.hi()));
  }
}

TEST_CASE("directed rounding helpers bracket the exact result") {
  oracle::DoubleSource src(99);
  for (int i = 0; i < 3000; ++i) {
    const double a = src.next(), b = src.next();
    const Rational ea = exact(a), eb = exact(b);
    if (std::isfinite(rounding::addUp(a, b))) {
      REQUIRE(exact(rounding::addDown(a, b)) <= ea + eb);
      REQUIRE(exact(rounding::addUp(a, b)) >= ea + eb);
    }
    if (std::isfinite(rounding::mulUp(a, b)) && std::isfinite(rounding::mulDown(a, b))) {
      REQUIRE(exact(rounding::mulDown(a, b)) <= ea * eb);
      REQUIRE(exact(rounding::mulUp(a, b)) >= ea * eb);
    }
    if (b != 0.0 && std::isfinite(rounding::divUp(a, b)) && std::isfinite(rounding::divDown(a, b))) {
      REQUIRE(exact(rounding::divDown(a, b)) <= ea / eb);
      REQUIRE(exact(rounding::divUp(a, b)) >= ea / eb);
    }
  }
}
