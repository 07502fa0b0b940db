#include "tbcp/spectral.hpp"

#include <numbers>

namespace tbcp {

MultiIndex::MultiIndex(std::initializer_list<int> components) {
  if (components.size() < 1 || components.size() > 3) {
    throw std::invalid_argument("MultiIndex: dimension must be 1, 2 or 3");
  }
  for (int v : components) {
    if (v < 0) throw std::invalid_argument("MultiIndex: negative component");
    c_[static_cast<std::size_t>(dim_++)] = v;
  }
}

MultiIndex MultiIndex::zero(int dim) {
  if (dim < 1 || dim > 3) throw std::invalid_argument("MultiIndex: dimension must be 1, 2 or 3");
  MultiIndex k;
  k.dim_ = dim;
  return k;
}

long MultiIndex::normSq() const {
  long s = 0;
  for (int a = 0; a < dim_; ++a) s += static_cast<long>(c_[a]) * c_[a];
  return s;
}

int MultiIndex::infNorm() const {
  int m = 0;
  for (int a = 0; a < dim_; ++a) m = std::max(m, c_[a]);
  return m;
}

int MultiIndex::nonzeroCount() const {
  int n = 0;
  for (int a = 0; a < dim_; ++a) n += c_[a] != 0;
  return n;
}

std::vector<MultiIndex> multiIndicesBelow(int dim, int bound) {
  std::vector<MultiIndex> out;
  if (bound < 1) return out;
  BasicCosineField<double> shape(dim, bound);
  out.reserve(shape.size());
  for (std::size_t f = 0; f < shape.size(); ++f) out.push_back(shape.multiIndex(f));
  return out;
}

IntervalField toInterval(const CosineField& u) {
  IntervalField r(u.dim(), u.degreeBound());
  for (std::size_t f = 0; f < u.size(); ++f) r.coeffs()[f] = Interval(u.coeffs()[f]);
  return r;
}

CosineField midpoint(const IntervalField& u) {
  CosineField r(u.dim(), u.degreeBound());
  for (std::size_t f = 0; f < u.size(); ++f) r.coeffs()[f] = u.coeffs()[f].mid();
  return r;
}

Interval kappa(const MultiIndex& k) {
  return Scalar<Interval>::pi2() * Interval(static_cast<double>(k.normSq()));
}

namespace {

template <class T>
Interval hBarNormImpl(const BasicCosineField<T>& u, int ell) {
  if (ell < 0 && !u.isZeroMean()) {
    throw std::domain_error("hBarNorm: negative order requires a zero-mean field");
  }
  Interval s(0.0);
  for (std::size_t f = 1; f < u.size(); ++f) {
    const Interval a = Scalar<T>::toInterval(u.coeffs()[f]);
    if (Scalar<Interval>::isZero(a)) continue;
    s += pow(kappa(u.multiIndex(f)), ell) * sqr(a);
  }
  return sqrt(s);
}

template <class T>
Interval hNormImpl(const BasicCosineField<T>& u, int ell) {
  if (ell < 0) throw std::domain_error("hNorm: order must be nonnegative");
  Interval s(0.0);
  for (std::size_t f = 0; f < u.size(); ++f) {
    const Interval a = Scalar<T>::toInterval(u.coeffs()[f]);
    if (Scalar<Interval>::isZero(a)) continue;
    const MultiIndex k = u.multiIndex(f);
    const Interval w = k.isZero() ? Interval(1.0) : Interval(1.0) + pow(kappa(k), ell);
    s += w * sqr(a);
  }
  return sqrt(s);
}

template <class T>
Interval supNormImpl(const BasicCosineField<T>& u) {
  Interval l1(0.0);
  for (std::size_t f = 0; f < u.size(); ++f) {
    const Interval a = Scalar<T>::toInterval(u.coeffs()[f]);
    if (Scalar<Interval>::isZero(a)) continue;
    l1 += abs(a) * sqrt2Power<Interval>(u.multiIndex(f).nonzeroCount());
  }
  if (u.dim() < 1) return l1;
  const SobolevConstants sc = sobolevConstants(u.dim());
  const Interval emb = u.isZeroMean() ? Interval(sc.CmBar) * hBarNormImpl(u, 2)
                                      : Interval(sc.Cm) * hNormImpl(u, 2);
  return emb.hi() < l1.hi() ? emb : l1;
}

template <class T>
Interval tailImpl(const BasicCosineField<T>& u, int n, int ell, int m) {
  if (ell > m) throw std::domain_error("tailNormBound: requires ell <= m");
  if (n < 1) throw std::domain_error("tailNormBound: cutoff must be positive");
  const Interval factor = Interval(1.0) / pow(Interval::pi() * Interval(static_cast<double>(n)), m - ell);
  return factor * hBarNormImpl(u, m);
}

}  // namespace

Interval hBarNorm(const CosineField& u, int ell) { return hBarNormImpl(u, ell); }
Interval hBarNorm(const IntervalField& u, int ell) { return hBarNormImpl(u, ell); }
Interval hNorm(const CosineField& u, int ell) { return hNormImpl(u, ell); }
Interval hNorm(const IntervalField& u, int ell) { return hNormImpl(u, ell); }
Interval supNormUpperBound(const CosineField& u) { return supNormImpl(u); }
Interval supNormUpperBound(const IntervalField& u) { return supNormImpl(u); }
Interval tailNormBound(const CosineField& u, int n, int ell, int m) { return tailImpl(u, n, ell, m); }
Interval tailNormBound(const IntervalField& u, int n, int ell, int m) { return tailImpl(u, n, ell, m); }

SobolevConstants sobolevConstants(int dim) {
  static const double ce = [] {
    const Interval pi2 = sqr(Interval::pi());
    return (sqrt(Interval(1.0) + sqr(pi2)) / pi2).hi();
  }();
  switch (dim) {
    case 1: return {1.010947, 0.149072, 1.471443, ce};
    case 2: return {1.030255, 0.248740, 1.488231, ce};
    case 3: return {1.081202, 0.411972, 1.554916, ce};
    default: throw std::domain_error("sobolevConstants: dimension must be 1, 2 or 3");
  }
}

double evaluate(const CosineField& u, std::span<const double> x) {
  if (static_cast<int>(x.size()) != u.dim()) throw std::invalid_argument("evaluate: point dimension mismatch");
  double s = 0.0;
  for (std::size_t f = 0; f < u.size(); ++f) {
    const double a = u.coeffs()[f];
    if (a == 0.0) continue;
    const MultiIndex k = u.multiIndex(f);
    double v = a;
    for (int ax = 0; ax < u.dim(); ++ax) {
      if (k[ax] != 0) v *= std::numbers::sqrt2 * std::cos(k[ax] * std::numbers::pi * x[static_cast<std::size_t>(ax)]);
    }
    s += v;
  }
  return s;
}

std::vector<double> evaluateOnGrid(const CosineField& u, int n) {
  const int d = u.dim();
  const int db = u.degreeBound();
  // table[k][i] = c_k cos(k π x_i)
  std::vector<double> table(static_cast<std::size_t>(db) * n);
  for (int k = 0; k < db; ++k) {
    for (int i = 0; i < n; ++i) {
      const double x = (i + 0.5) / n;
      table[static_cast<std::size_t>(k) * n + i] =
          k == 0 ? 1.0 : std::numbers::sqrt2 * std::cos(k * std::numbers::pi * x);
    }
  }
  std::size_t total = 1;
  for (int a = 0; a < d; ++a) total *= static_cast<std::size_t>(n);
  std::vector<double> out(total, 0.0);
  for (std::size_t f = 0; f < u.size(); ++f) {
    const double a = u.coeffs()[f];
    if (a == 0.0) continue;
    const MultiIndex k = u.multiIndex(f);
    for (std::size_t p = 0; p < total; ++p) {
      std::size_t rem = p;
      double v = a;
      for (int ax = d - 1; ax >= 0; --ax) {
        const std::size_t i = rem % static_cast<std::size_t>(n);
        rem /= static_cast<std::size_t>(n);
        v *= table[static_cast<std::size_t>(k[ax]) * n + i];
      }
      out[p] += v;
    }
  }
  return out;
}

}  // namespace tbcp
