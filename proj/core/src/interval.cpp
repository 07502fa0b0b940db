#include "tbcp/interval.hpp"

#include <algorithm>
#include <iomanip>
#include <ostream>

namespace tbcp {

using namespace rounding;

double Interval::mid() const {
  if (lo_ == -hi_) return 0.0;
  const double m = 0.5 * lo_ + 0.5 * hi_;  // no overflow, exact halving
  return std::clamp(m, lo_, hi_);
}

double Interval::rad() const {
  const double m = mid();
  return std::fmax(subUp(m, lo_), subUp(hi_, m));
}

double Interval::mig() const {
  if (containsZero()) return 0.0;
  return std::fmin(std::fabs(lo_), std::fabs(hi_));
}

Interval Interval::pi() {
  return Interval(0x1.921fb54442d18p+1, 0x1.921fb54442d19p+1);
}

Interval Interval::sqrt2() {
  return Interval(sqrtDown(2.0), sqrtUp(2.0));
}

Interval sqrt(const Interval& a) {
  if (a.lo() < 0) {
    throw std::domain_error("Interval sqrt of an interval with negative lower bound");
  }
  return Interval(sqrtDown(a.lo()), sqrtUp(a.hi()));
}

Interval sqr(const Interval& a) {
  const double lo = a.mig();
  const double hi = a.mag();
  return Interval(mulDown(lo, lo), mulUp(hi, hi));
}

Interval abs(const Interval& a) { return Interval(a.mig(), a.mag()); }

Interval pow(const Interval& a, int n) {
  if (n < 0) return Interval(1.0) / pow(a, -n);
  if (n == 0) return Interval(1.0);
  if (n == 1) return a;
  if (n % 2 == 0) return sqr(pow(a, n / 2));
  // Odd powers are monotone; evaluate at the endpoints to avoid the
  // dependency overestimate of a * a^{n-1}.
  const Interval l = a.lo() * pow(Interval(a.lo()), n - 1);
  const Interval h = a.hi() * pow(Interval(a.hi()), n - 1);
  return Interval(l.lo(), h.hi());
}

Interval max(const Interval& a, const Interval& b) {
  return Interval(std::fmax(a.lo(), b.lo()), std::fmax(a.hi(), b.hi()));
}

Interval min(const Interval& a, const Interval& b) {
  return Interval(std::fmin(a.lo(), b.lo()), std::fmin(a.hi(), b.hi()));
}

namespace {

Interval cosPoint(double x) {
  const double c = std::cos(x);
  const double lo = std::fmax(-1.0, down(down(c)));
  const double hi = std::fmin(1.0, up(up(c)));
  return Interval(lo, hi);
}

}  // namespace

Interval cos(const Interval& a) {
  const Interval pi = Interval::pi();
  const Interval twoPi = Interval(2.0) * pi;
  if (a.width() >= twoPi.lo()) return Interval(-1.0, 1.0);
  Interval r = Interval::hull(cosPoint(a.lo()), cosPoint(a.hi()));
  // Extrema of cos sit at integer multiples n*pi; include every one that
  // may lie inside the argument.
  const long nlo = static_cast<long>(std::floor(divDown(a.lo(), pi.hi()))) - 1;
  const long nhi = static_cast<long>(std::ceil(divUp(a.hi(), pi.lo()))) + 1;
  for (long n = nlo; n <= nhi; ++n) {
    const Interval np = Interval(static_cast<double>(n)) * pi;
    if (np.hi() >= a.lo() && np.lo() <= a.hi()) {
      r = Interval::hull(r, Interval(n % 2 == 0 ? 1.0 : -1.0));
    }
  }
  return r;
}

std::ostream& operator<<(std::ostream& os, const Interval& x) {
  const auto flags = os.flags();
  const auto prec = os.precision();
  os << std::setprecision(17) << '[' << x.lo() << ", " << x.hi() << ']';
  os.flags(flags);
  os.precision(prec);
  return os;
}

}  // namespace tbcp
