#include "tbcp/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace tbcp {

MassVector MassVector::fromPair(double mu1, double mu2) {
  return fromTriple(mu1, mu2, 1.0 - mu1 - mu2);
}

MassVector MassVector::fromTriple(double mu1, double mu2, double mu3) {
  if (!std::isfinite(mu1) || !std::isfinite(mu2) || !std::isfinite(mu3)) {
    throw std::invalid_argument("mass vector must be finite");
  }
  if (std::fabs(mu1 + mu2 + mu3 - 1.0) > 1e-12) {
    throw std::invalid_argument("mass vector must sum to 1");
  }
  MassVector m{mu1, mu2, mu3};
  const double tol = 1e-12;
  if (m.mu1 < -tol || m.mu2 < -tol || m.mu3 < -tol) {
    throw std::invalid_argument("mass vector must lie in the Gibbs triangle");
  }
  return m;
}

void ModelParams::check() const {
  if (dim != 1 && dim != 2) throw std::invalid_argument("dim must be 1 or 2");
  if (!(lambda > 0) || !std::isfinite(lambda)) throw std::invalid_argument("lambda must be positive");
  if (!(sigma >= 0) || !std::isfinite(sigma)) throw std::invalid_argument("sigma must be nonnegative");
  MassVector::fromTriple(mass.mu1, mass.mu2, mass.mu3);
}

const char* toString(StabilityTag tag) {
  switch (tag) {
    case StabilityTag::Stable: return "Stable";
    case StabilityTag::OneUnstable: return "OneUnstable";
    case StabilityTag::TwoUnstable: return "TwoUnstable";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Polynomial tables

namespace {

BivariatePoly polyMul(const BivariatePoly& a, const BivariatePoly& b) {
  BivariatePoly r;
  for (int p = 0; p < 4; ++p) {
    for (int q = 0; p + q < 4; ++q) {
      if (Scalar<Interval>::isZero(a.coef(p, q))) continue;
      for (int s = 0; p + s < 4; ++s) {
        for (int t = 0; p + q + s + t < 4; ++t) {
          r.coef(p + s, q + t) += a.coef(p, q) * b.coef(s, t);
        }
      }
    }
  }
  return r;
}

BivariatePoly polyAxpy(const BivariatePoly& x, const Interval& a, const BivariatePoly& y) {
  BivariatePoly r = y;
  for (std::size_t i = 0; i < 16; ++i) r.c[i] += a * x.c[i];
  return r;
}

// g'(c0 + c1 u1 + c2 u2) = 13.5 L - 40.5 L² + 27 L³
BivariatePoly gPrimeOfLinear(double c0, double c1, double c2) {
  BivariatePoly l;
  l.coef(0, 0) = c0;
  l.coef(1, 0) = c1;
  l.coef(0, 1) = c2;
  const BivariatePoly l2 = polyMul(l, l);
  const BivariatePoly l3 = polyMul(l2, l);
  BivariatePoly r;
  r = polyAxpy(l, Interval(13.5), r);
  r = polyAxpy(l2, Interval(-40.5), r);
  r = polyAxpy(l3, Interval(27.0), r);
  return r;
}

std::array<BivariatePoly, 2> buildF() {
  const BivariatePoly g1 = gPrimeOfLinear(0, 1, 0);
  const BivariatePoly g2 = gPrimeOfLinear(0, 0, 1);
  const BivariatePoly g3 = gPrimeOfLinear(1, -1, -1);
  const Interval third = Interval(1.0) / Interval(3.0);
  std::array<BivariatePoly, 2> f;
  for (std::size_t i = 0; i < 16; ++i) {
    f[0].c[i] = (Interval(-2.0) * g1.c[i] + g2.c[i] + g3.c[i]) * third;
    f[1].c[i] = (g1.c[i] - Interval(2.0) * g2.c[i] + g3.c[i]) * third;
  }
  return f;
}

long binom(int n, int k) {
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

BivariatePoly BivariatePoly::dx() const {
  BivariatePoly r;
  for (int p = 1; p < 4; ++p) {
    for (int q = 0; p + q < 4; ++q) r.coef(p - 1, q) = coef(p, q) * Interval(p);
  }
  return r;
}

BivariatePoly BivariatePoly::dy() const {
  BivariatePoly r;
  for (int p = 0; p < 4; ++p) {
    for (int q = 1; p + q < 4; ++q) r.coef(p, q - 1) = coef(p, q) * Interval(q);
  }
  return r;
}

BivariatePoly BivariatePoly::shifted(double x0, double y0) const {
  BivariatePoly r;
  const Interval x(x0), y(y0);
  for (int p = 0; p < 4; ++p) {
    for (int q = 0; p + q < 4; ++q) {
      if (Scalar<Interval>::isZero(coef(p, q))) continue;
      for (int a = 0; a <= p; ++a) {
        for (int b = 0; b <= q; ++b) {
          const Interval w = Interval(static_cast<double>(binom(p, a) * binom(q, b))) *
                             pow(x, p - a) * pow(y, q - b);
          r.coef(a, b) += coef(p, q) * w;
        }
      }
    }
  }
  return r;
}

Interval BivariatePoly::eval(const Interval& x, const Interval& y) const {
  Interval s(0.0);
  for (int p = 0; p < 4; ++p) {
    for (int q = 0; p + q < 4; ++q) {
      if (Scalar<Interval>::isZero(coef(p, q))) continue;
      s += coef(p, q) * pow(x, p) * pow(y, q);
    }
  }
  return s;
}

double BivariatePoly::eval(double x, double y) const {
  double s = 0.0;
  for (int p = 0; p < 4; ++p) {
    for (int q = 0; p + q < 4; ++q) s += coef(p, q).mid() * std::pow(x, p) * std::pow(y, q);
  }
  return s;
}

const std::array<BivariatePoly, 2>& fPolynomials() {
  static const std::array<BivariatePoly, 2> f = buildF();
  return f;
}

namespace {

struct DerivativeTables {
  std::array<std::array<BivariatePoly, 2>, 2> df;                   // [i][j]
  std::array<std::array<std::array<BivariatePoly, 2>, 2>, 2> d2f;   // [i][j][k]
};

const DerivativeTables& derivatives() {
  static const DerivativeTables t = [] {
    DerivativeTables d;
    const auto& f = fPolynomials();
    for (int i = 0; i < 2; ++i) {
      d.df[i][0] = f[i].dx();
      d.df[i][1] = f[i].dy();
      for (int j = 0; j < 2; ++j) {
        d.d2f[i][j][0] = d.df[i][j].dx();
        d.d2f[i][j][1] = d.df[i][j].dy();
      }
    }
    return d;
  }();
  return t;
}

}  // namespace

std::array<double, 2> fEval(double u1, double u2) {
  const auto& f = fPolynomials();
  return {f[0].eval(u1, u2), f[1].eval(u1, u2)};
}

std::array<Interval, 2> fEval(const Interval& u1, const Interval& u2) {
  const auto& f = fPolynomials();
  return {f[0].eval(u1, u2), f[1].eval(u1, u2)};
}

std::array<std::array<double, 2>, 2> dfJacobian(double u1, double u2) {
  const auto& d = derivatives();
  std::array<std::array<double, 2>, 2> r{};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) r[i][j] = d.df[i][j].eval(u1, u2);
  }
  return r;
}

std::array<std::array<Interval, 2>, 2> dfJacobian(const Interval& u1, const Interval& u2) {
  const auto& d = derivatives();
  std::array<std::array<Interval, 2>, 2> r{};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) r[i][j] = d.df[i][j].eval(u1, u2);
  }
  return r;
}

std::array<std::array<std::array<double, 2>, 2>, 2> d2fTensor(double u1, double u2) {
  const auto& d = derivatives();
  std::array<std::array<std::array<double, 2>, 2>, 2> r{};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      for (int k = 0; k < 2; ++k) r[i][j][k] = d.d2f[i][j][k].eval(u1, u2);
    }
  }
  return r;
}

std::array<std::array<std::array<Interval, 2>, 2>, 2> d2fTensor(const Interval& u1, const Interval& u2) {
  const auto& d = derivatives();
  std::array<std::array<std::array<Interval, 2>, 2>, 2> r{};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      for (int k = 0; k < 2; ++k) r[i][j][k] = d.d2f[i][j][k].eval(u1, u2);
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Field composition

namespace {

template <class T>
struct Monomials {
  // m[a][b] = w1^a w2^b, a + b ≤ degree
  std::array<std::array<BasicCosineField<T>, 4>, 4> m;
};

template <class T>
Monomials<T> monomials(const FieldPair<T>& w, int degree) {
  if (w[0].dim() != w[1].dim()) throw std::invalid_argument("field pair dimension mismatch");
  Monomials<T> r;
  const int d = w[0].dim();
  r.m[0][0] = BasicCosineField<T>::basis(d, MultiIndex::zero(d));
  if (degree >= 1) {
    r.m[1][0] = w[0];
    r.m[0][1] = w[1];
  }
  if (degree >= 2) {
    r.m[2][0] = product(w[0], w[0]);
    r.m[1][1] = product(w[0], w[1]);
    r.m[0][2] = product(w[1], w[1]);
  }
  if (degree >= 3) {
    r.m[3][0] = product(r.m[2][0], w[0]);
    r.m[2][1] = product(r.m[2][0], w[1]);
    r.m[1][2] = product(r.m[0][2], w[0]);
    r.m[0][3] = product(r.m[0][2], w[1]);
  }
  return r;
}

template <class T>
BasicCosineField<T> compose(const BivariatePoly& shifted, const Monomials<T>& mono, int degree) {
  BasicCosineField<T> r;
  // Start from the largest monomial so the extent is fixed once.
  for (int total = degree; total >= 0; --total) {
    for (int a = 0; a <= total; ++a) {
      const int b = total - a;
      const Interval& c = shifted.coef(a, b);
      const BasicCosineField<T>& m = mono.m[a][b];
      if (m.dim() == 0) continue;
      if (r.dim() == 0) r = BasicCosineField<T>(m.dim(), m.degreeBound());
      if (Scalar<Interval>::isZero(c)) continue;
      r.accumulate(m, Scalar<T>::fromInterval(c));
    }
  }
  return r;
}

template <class T>
FieldPair<T> fComposeImpl(const FieldPair<T>& w, const MassVector& mass) {
  const Monomials<T> mono = monomials(w, 3);
  const auto& f = fPolynomials();
  return {compose(f[0].shifted(mass.mu1, mass.mu2), mono, 3),
          compose(f[1].shifted(mass.mu1, mass.mu2), mono, 3)};
}

template <class T>
std::array<FieldPair<T>, 2> dfComposeImpl(const FieldPair<T>& w, const MassVector& mass) {
  const Monomials<T> mono = monomials(w, 2);
  const auto& d = derivatives();
  std::array<FieldPair<T>, 2> r;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) r[i][j] = compose(d.df[i][j].shifted(mass.mu1, mass.mu2), mono, 2);
  }
  return r;
}

}  // namespace

FieldPair<double> fFieldComposition(const FieldPair<double>& w, const MassVector& mass) {
  return fComposeImpl(w, mass);
}
FieldPair<Interval> fFieldComposition(const FieldPair<Interval>& w, const MassVector& mass) {
  return fComposeImpl(w, mass);
}
std::array<FieldPair<double>, 2> dfFieldComposition(const FieldPair<double>& w, const MassVector& mass) {
  return dfComposeImpl(w, mass);
}
std::array<FieldPair<Interval>, 2> dfFieldComposition(const FieldPair<Interval>& w,
                                                       const MassVector& mass) {
  return dfComposeImpl(w, mass);
}

// ---------------------------------------------------------------------------
// Homogeneous stability

std::array<std::array<double, 2>, 2> homogeneousM(const MassVector& mass) {
  const double g1 = gDoublePrime(mass.mu1);
  const double g2 = gDoublePrime(mass.mu2);
  const double g3 = gDoublePrime(mass.mu3);
  return {{{(-2.0 * g1 - g3) / 3.0, (g2 - g3) / 3.0}, {(g1 - g3) / 3.0, (-2.0 * g2 - g3) / 3.0}}};
}

HomogeneousSpectrum homogeneousSpectrum(const MassVector& mass) {
  const double g1 = gDoublePrime(mass.mu1);
  const double g2 = gDoublePrime(mass.mu2);
  const double g3 = gDoublePrime(mass.mu3);
  const auto m = homogeneousM(mass);
  std::array<double, 3> gs{g1, g2, g3};
  std::sort(gs.begin(), gs.end());
  const double tr = -2.0 * ((gs[0] + gs[1]) + gs[2]) / 3.0;
  // Discriminant as a sum of squares: always real spectrum.
  // Terms are summed in sorted order so that permuting μ is bit-symmetric.
  std::array<double, 3> sq{(g1 - g2) * (g1 - g2), (g2 - g3) * (g2 - g3), (g3 - g1) * (g3 - g1)};
  std::sort(sq.begin(), sq.end());
  const double disc = (2.0 / 9.0) * ((sq[0] + sq[1]) + sq[2]);
  const double root = std::sqrt(disc);
  HomogeneousSpectrum s;
  s.nu1 = 0.5 * (tr + root);
  s.nu2 = 0.5 * (tr - root);
  auto eigvec = [&](double nu, std::array<double, 2> fallback) {
    const std::array<double, 2> a{m[0][1], nu - m[0][0]};
    const std::array<double, 2> b{nu - m[1][1], m[1][0]};
    const double na = std::hypot(a[0], a[1]);
    const double nb = std::hypot(b[0], b[1]);
    const double scale = std::fabs(m[0][0]) + std::fabs(m[0][1]) + std::fabs(m[1][0]) + std::fabs(m[1][1]) + 1.0;
    if (std::max(na, nb) <= 1e-12 * scale) return fallback;
    std::array<double, 2> v = na >= nb ? a : b;
    const double n = std::max(na, nb);
    v[0] /= n;
    v[1] /= n;
    if (v[0] < 0 || (v[0] == 0 && v[1] < 0)) {
      v[0] = -v[0];
      v[1] = -v[1];
    }
    return v;
  };
  s.p1 = eigvec(s.nu1, {1.0, 0.0});
  s.p2 = eigvec(s.nu2, {0.0, 1.0});
  return s;
}

StabilityClass classifyStability(const MassVector& mass) {
  const HomogeneousSpectrum s = homogeneousSpectrum(mass);
  StabilityClass c;
  c.nu1 = s.nu1;
  c.nu2 = s.nu2;
  if (s.nu2 > 0) {
    c.tag = StabilityTag::TwoUnstable;
  } else if (s.nu1 > 0) {
    c.tag = StabilityTag::OneUnstable;
  } else {
    c.tag = StabilityTag::Stable;
  }
  return c;
}

double lambdaJK(int j, const MultiIndex& k, double eps2, double sigma, const MassVector& mass) {
  if (k.isZero()) throw std::domain_error("lambdaJK: k must be nonzero");
  if (j != 1 && j != 2) throw std::domain_error("lambdaJK: j must be 1 or 2");
  const HomogeneousSpectrum s = homogeneousSpectrum(mass);
  const double nu = j == 1 ? s.nu1 : s.nu2;
  const double kap = kappaAs<double>(k);
  return kap * (nu - eps2 * kap) - sigma;
}

StabilityRaster stabilityGrid(int resolution) {
  if (resolution < 2) throw std::invalid_argument("stabilityGrid: resolution must be >= 2");
  StabilityRaster r;
  r.resolution = resolution;
  const int n = resolution - 1;
  r.points.reserve(static_cast<std::size_t>(resolution) * (resolution + 1) / 2);
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; i + j <= n; ++j) {
      const double mu1 = static_cast<double>(i) / n;
      const double mu2 = static_cast<double>(j) / n;
      const double mu3 = static_cast<double>(n - i - j) / n;
      MassVector m{mu1, mu2, mu3};
      r.points.push_back({mu1, mu2, mu3, classifyStability(m)});
    }
  }
  return r;
}

}  // namespace tbcp
