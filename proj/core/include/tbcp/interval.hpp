#pragma once

// Closed floating-point intervals with outward rounding.
//
// Directed rounding is emulated in round-to-nearest with error-free
// transformations (TwoSum, FMA residuals): the exact error term decides
// whether the nearest result has to step one ulp outward.  No global FP
// state is touched, so the kernel is safe to use from any thread.  Near the
// underflow range the residuals stop being exact and we fall back to a
// plain one-ulp widening.

#include <cmath>
#include <iosfwd>
#include <limits>
#include <stdexcept>

namespace tbcp {

namespace rounding {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kMax = std::numeric_limits<double>::max();
// Below this magnitude FMA residuals of products/quotients may be inexact.
inline constexpr double kTiny = 0x1p-960;

inline double down(double x) { return std::nextafter(x, -kInf); }
inline double up(double x) { return std::nextafter(x, kInf); }

inline double addDown(double a, double b) {
  const double s = a + b;
  if (!std::isfinite(s)) {
    return (s == kInf && std::isfinite(a) && std::isfinite(b)) ? kMax : s;
  }
  const double bb = s - a;
  const double e = (a - (s - bb)) + (b - bb);
  return e < 0 ? down(s) : s;
}

inline double addUp(double a, double b) {
  const double s = a + b;
  if (!std::isfinite(s)) {
    return (s == -kInf && std::isfinite(a) && std::isfinite(b)) ? -kMax : s;
  }
  const double bb = s - a;
  const double e = (a - (s - bb)) + (b - bb);
  return e > 0 ? up(s) : s;
}

inline double subDown(double a, double b) { return addDown(a, -b); }
inline double subUp(double a, double b) { return addUp(a, -b); }

inline double mulDown(double a, double b) {
  const double p = a * b;
  if (a == 0 || b == 0) return 0.0;
  if (!std::isfinite(p)) return p == kInf ? kMax : p;
  if (std::fabs(p) < kTiny) return down(p);
  return std::fma(a, b, -p) < 0 ? down(p) : p;
}

inline double mulUp(double a, double b) {
  const double p = a * b;
  if (a == 0 || b == 0) return 0.0;
  if (!std::isfinite(p)) return p == -kInf ? -kMax : p;
  if (std::fabs(p) < kTiny) return up(p);
  return std::fma(a, b, -p) > 0 ? up(p) : p;
}

// a/b = q + r/b with r = a - q*b exact; the sign of r/b decides the step.
inline double divDown(double a, double b) {
  const double q = a / b;
  if (a == 0) return 0.0;
  if (!std::isfinite(q)) return q == kInf ? kMax : q;
  const double aq = std::fabs(q);
  if (aq < kTiny || aq > 0x1p960 || std::fabs(a) < kTiny) return down(q);
  const double r = std::fma(-q, b, a);
  return (r != 0 && ((r < 0) != (b < 0))) ? down(q) : q;
}

inline double divUp(double a, double b) {
  const double q = a / b;
  if (a == 0) return 0.0;
  if (!std::isfinite(q)) return q == -kInf ? -kMax : q;
  const double aq = std::fabs(q);
  if (aq < kTiny || aq > 0x1p960 || std::fabs(a) < kTiny) return up(q);
  const double r = std::fma(-q, b, a);
  return (r != 0 && ((r > 0) == (b > 0))) ? up(q) : q;
}

inline double sqrtDown(double a) {
  if (a == 0) return 0.0;
  const double s = std::sqrt(a);
  if (a < kTiny) return down(s);
  return std::fma(-s, s, a) < 0 ? down(s) : s;
}

inline double sqrtUp(double a) {
  if (a == 0) return 0.0;
  const double s = std::sqrt(a);
  if (a < kTiny) return up(s);
  return std::fma(-s, s, a) > 0 ? up(s) : s;
}

}  // namespace rounding

class Interval {
 public:
  constexpr Interval() = default;
  // Point interval; implicit so that exact constants mix with intervals.
  constexpr Interval(double v) : lo_(v), hi_(v) {}  // NOLINT
  Interval(double lo, double hi) : lo_(lo), hi_(hi) {
    if (std::isnan(lo) || std::isnan(hi) || lo > hi) {
      throw std::invalid_argument("Interval: invalid endpoints");
    }
  }

  constexpr double lo() const { return lo_; }
  constexpr double hi() const { return hi_; }
  double mid() const;
  // Radius r with [lo,hi] ⊆ [mid-r, mid+r].
  double rad() const;
  double width() const { return rounding::subUp(hi_, lo_); }
  // max |x| over the interval
  double mag() const { return std::fmax(std::fabs(lo_), std::fabs(hi_)); }
  // min |x| over the interval
  double mig() const;

  bool contains(double x) const { return lo_ <= x && x <= hi_; }
  bool contains(const Interval& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }
  bool containsZero() const { return lo_ <= 0 && 0 <= hi_; }
  bool isPoint() const { return lo_ == hi_; }

  static Interval hull(const Interval& a, const Interval& b) {
    return {std::fmin(a.lo_, b.lo_), std::fmax(a.hi_, b.hi_)};
  }
  static Interval pi();
  static Interval sqrt2();

  Interval operator-() const { return fromOrdered(-hi_, -lo_); }

  friend Interval operator+(const Interval& a, const Interval& b) {
    return fromOrdered(rounding::addDown(a.lo_, b.lo_), rounding::addUp(a.hi_, b.hi_));
  }
  friend Interval operator-(const Interval& a, const Interval& b) {
    return fromOrdered(rounding::subDown(a.lo_, b.hi_), rounding::subUp(a.hi_, b.lo_));
  }
  friend Interval operator*(const Interval& a, const Interval& b);
  friend Interval operator/(const Interval& a, const Interval& b);

  Interval& operator+=(const Interval& o) { return *this = *this + o; }
  Interval& operator-=(const Interval& o) { return *this = *this - o; }
  Interval& operator*=(const Interval& o) { return *this = *this * o; }
  Interval& operator/=(const Interval& o) { return *this = *this / o; }

  friend bool operator==(const Interval& a, const Interval& b) {
    return a.lo_ == b.lo_ && a.hi_ == b.hi_;
  }

 private:
  static constexpr Interval fromOrdered(double lo, double hi) {
    Interval r;
    r.lo_ = lo;
    r.hi_ = hi;
    return r;
  }

  double lo_ = 0.0;
  double hi_ = 0.0;
};

inline Interval operator*(const Interval& a, const Interval& b) {
  using namespace rounding;
  const double al = a.lo_, ah = a.hi_, bl = b.lo_, bh = b.hi_;
  if (al >= 0) {
    if (bl >= 0) return Interval::fromOrdered(mulDown(al, bl), mulUp(ah, bh));
    if (bh <= 0) return Interval::fromOrdered(mulDown(ah, bl), mulUp(al, bh));
    return Interval::fromOrdered(mulDown(ah, bl), mulUp(ah, bh));
  }
  if (ah <= 0) {
    if (bl >= 0) return Interval::fromOrdered(mulDown(al, bh), mulUp(ah, bl));
    if (bh <= 0) return Interval::fromOrdered(mulDown(ah, bh), mulUp(al, bl));
    return Interval::fromOrdered(mulDown(al, bh), mulUp(al, bl));
  }
  if (bl >= 0) return Interval::fromOrdered(mulDown(al, bh), mulUp(ah, bh));
  if (bh <= 0) return Interval::fromOrdered(mulDown(ah, bl), mulUp(al, bl));
  return Interval::fromOrdered(std::fmin(mulDown(al, bh), mulDown(ah, bl)),
                               std::fmax(mulUp(al, bl), mulUp(ah, bh)));
}

inline Interval operator/(const Interval& a, const Interval& b) {
  using namespace rounding;
  if (b.containsZero()) {
    throw std::domain_error("Interval division by an interval containing zero");
  }
  const double al = a.lo_, ah = a.hi_, bl = b.lo_, bh = b.hi_;
  if (bl > 0) {
    if (al >= 0) return Interval::fromOrdered(divDown(al, bh), divUp(ah, bl));
    if (ah <= 0) return Interval::fromOrdered(divDown(al, bl), divUp(ah, bh));
    return Interval::fromOrdered(divDown(al, bl), divUp(ah, bl));
  }
  if (al >= 0) return Interval::fromOrdered(divDown(ah, bh), divUp(al, bl));
  if (ah <= 0) return Interval::fromOrdered(divDown(ah, bl), divUp(al, bh));
  return Interval::fromOrdered(divDown(ah, bh), divUp(al, bh));
}

Interval sqrt(const Interval& a);
Interval sqr(const Interval& a);
Interval abs(const Interval& a);
Interval pow(const Interval& a, int n);
Interval max(const Interval& a, const Interval& b);
Interval min(const Interval& a, const Interval& b);
// Enclosure of cos over the interval.  Endpoint values come from the C
// library cosine widened by two ulps (glibc documents <= 1 ulp error).
Interval cos(const Interval& a);

std::ostream& operator<<(std::ostream& os, const Interval& x);

}  // namespace tbcp
