#pragma once

// Fourier-cosine function algebra on (0,1)^d, d ∈ {1,2,3}.
//
// Basis: φ_k(x) = c_k Π cos(k_i π x_i) with c_k = (√2)^{#nonzero k_i}, so
// {φ_k} is L²-orthonormal and -Δφ_k = κ_k φ_k with κ_k = π²|k|².

#include <algorithm>
#include <array>
#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdlib>
#include <initializer_list>
#include <numbers>
#include <span>
#include <stdexcept>
#include <type_traits>
#include <vector>

#include "tbcp/interval.hpp"

namespace tbcp {

class MultiIndex {
 public:
  MultiIndex() = default;
  MultiIndex(std::initializer_list<int> components);
  static MultiIndex zero(int dim);

  int dim() const { return dim_; }
  int operator[](int axis) const { return c_[static_cast<std::size_t>(axis)]; }
  int& operator[](int axis) { return c_[static_cast<std::size_t>(axis)]; }

  long normSq() const;
  int infNorm() const;
  int nonzeroCount() const;
  bool isZero() const { return infNorm() == 0; }

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
  friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;

 private:
  int dim_ = 0;
  std::array<int, 3> c_{};
};

// All multi-indices with |k|_∞ < bound, lexicographic order.
std::vector<MultiIndex> multiIndicesBelow(int dim, int bound);

// Scalar plumbing shared by plain and interval fields.
template <class T>
struct Scalar;

template <>
struct Scalar<double> {
  static double fromInterval(const Interval& x) { return x.mid(); }
  static Interval toInterval(double x) { return Interval(x); }
  static bool isZero(double x) { return x == 0.0; }
  static double pi2() { return std::numbers::pi * std::numbers::pi; }
  static double sqrt2() { return std::numbers::sqrt2; }
  static double abs(double x) { return std::fabs(x); }
};

template <>
struct Scalar<Interval> {
  static Interval fromInterval(const Interval& x) { return x; }
  static Interval toInterval(const Interval& x) { return x; }
  static bool isZero(const Interval& x) { return x.lo() == 0.0 && x.hi() == 0.0; }
  static Interval pi2() {
    static const Interval v = sqr(Interval::pi());
    return v;
  }
  static Interval sqrt2() {
    static const Interval v = Interval::sqrt2();
    return v;
  }
  static Interval abs(const Interval& x) { return tbcp::abs(x); }
};

// (√2)^s and (√2)^{-s}, exact except for the odd √2 factor.
template <class T>
T sqrt2Power(int s) {
  T r = std::ldexp(1.0, s / 2);
  if (s % 2 != 0) r = r * Scalar<T>::sqrt2();
  return r;
}

template <class T>
T invSqrt2Power(int s) {
  if (s % 2 == 0) return T(std::ldexp(1.0, -s / 2));
  return Scalar<T>::sqrt2() * std::ldexp(1.0, -(s + 1) / 2);
}

template <class T>
class BasicCosineField {
 public:
  using value_type = T;

  BasicCosineField() = default;
  BasicCosineField(int dim, int degreeBound) : dim_(dim), degreeBound_(degreeBound) {
    if (dim < 1 || dim > 3) throw std::invalid_argument("CosineField: dimension must be 1, 2 or 3");
    if (degreeBound < 1) throw std::invalid_argument("CosineField: degreeBound must be positive");
    std::size_t n = 1;
    for (int a = 0; a < dim; ++a) n *= static_cast<std::size_t>(degreeBound);
    coeffs_.assign(n, T(0.0));
  }

  static BasicCosineField basis(int dim, const MultiIndex& k, T value = T(1.0)) {
    BasicCosineField f(dim, k.infNorm() + 1);
    f[k] = value;
    return f;
  }

  int dim() const { return dim_; }
  int degreeBound() const { return degreeBound_; }
  std::size_t size() const { return coeffs_.size(); }

  bool inRange(const MultiIndex& k) const { return k.infNorm() < degreeBound_; }

  std::size_t flatIndex(const MultiIndex& k) const {
    std::size_t f = 0;
    for (int a = 0; a < dim_; ++a) f = f * static_cast<std::size_t>(degreeBound_) + static_cast<std::size_t>(k[a]);
    return f;
  }

  MultiIndex multiIndex(std::size_t flat) const {
    MultiIndex k = MultiIndex::zero(dim_);
    for (int a = dim_ - 1; a >= 0; --a) {
      k[a] = static_cast<int>(flat % static_cast<std::size_t>(degreeBound_));
      flat /= static_cast<std::size_t>(degreeBound_);
    }
    return k;
  }

  T& operator[](const MultiIndex& k) { return coeffs_[flatIndex(k)]; }
  const T& operator[](const MultiIndex& k) const { return coeffs_[flatIndex(k)]; }

  // Coefficient with absent indices read as zero.
  T coefficient(const MultiIndex& k) const { return inRange(k) ? (*this)[k] : T(0.0); }

  std::vector<T>& coeffs() { return coeffs_; }
  const std::vector<T>& coeffs() const { return coeffs_; }

  bool isZeroMean() const { return coeffs_.empty() || Scalar<T>::isZero(coeffs_[0]); }

  // Same coefficients with a different per-axis extent (truncating or padding).
  BasicCosineField resized(int degreeBound) const {
    BasicCosineField r(dim_, degreeBound);
    const int m = std::min(degreeBound, degreeBound_);
    for (std::size_t f = 0; f < coeffs_.size(); ++f) {
      const MultiIndex k = multiIndex(f);
      if (k.infNorm() < m) r[k] = coeffs_[f];
    }
    return r;
  }

  BasicCosineField& operator+=(const BasicCosineField& o) { return accumulate(o, T(1.0)); }
  BasicCosineField& operator-=(const BasicCosineField& o) { return accumulate(o, T(-1.0)); }
  BasicCosineField& operator*=(const T& s) {
    for (auto& c : coeffs_) c = c * s;
    return *this;
  }

  // this += s * o, growing the extent when needed.
  BasicCosineField& accumulate(const BasicCosineField& o, const T& s) {
    if (dim_ == 0) *this = BasicCosineField(o.dim_, o.degreeBound_);
    if (o.dim_ != dim_) throw std::invalid_argument("CosineField: dimension mismatch");
    if (o.degreeBound_ > degreeBound_) *this = resized(o.degreeBound_);
    if (o.degreeBound_ == degreeBound_) {
      for (std::size_t f = 0; f < coeffs_.size(); ++f) coeffs_[f] = coeffs_[f] + s * o.coeffs_[f];
    } else {
      for (std::size_t f = 0; f < o.coeffs_.size(); ++f) {
        (*this)[o.multiIndex(f)] = (*this)[o.multiIndex(f)] + s * o.coeffs_[f];
      }
    }
    return *this;
  }

  friend BasicCosineField operator+(BasicCosineField a, const BasicCosineField& b) { return a += b; }
  friend BasicCosineField operator-(BasicCosineField a, const BasicCosineField& b) { return a -= b; }
  friend BasicCosineField operator*(const T& s, BasicCosineField a) { return a *= s; }
  BasicCosineField operator-() const {
    BasicCosineField r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }

  friend bool operator==(const BasicCosineField&, const BasicCosineField&) = default;

 private:
  int dim_ = 0;
  int degreeBound_ = 0;
  std::vector<T> coeffs_;
};

using CosineField = BasicCosineField<double>;
using IntervalField = BasicCosineField<Interval>;

IntervalField toInterval(const CosineField& u);
CosineField midpoint(const IntervalField& u);

// Tight enclosure of κ_k = π²|k|².
Interval kappa(const MultiIndex& k);

template <class T>
T kappaAs(const MultiIndex& k) {
  if constexpr (std::is_same_v<T, Interval>) {
    return kappa(k);
  } else {
    return Scalar<double>::pi2() * static_cast<double>(k.normSq());
  }
}

// Exact pointwise product via cos a cos b = (cos(a+b) + cos(a-b))/2.
template <class T>
BasicCosineField<T> product(const BasicCosineField<T>& u, const BasicCosineField<T>& v) {
  if (u.dim() != v.dim()) throw std::invalid_argument("product: dimension mismatch");
  const int d = u.dim();
  const int du = u.degreeBound(), dv = v.degreeBound();
  const int dr = du + dv - 1;
  BasicCosineField<T> r(d, dr);

  // Unnormalized cosine coefficients a_m = α_m c_m.
  auto unnormalized = [&](const BasicCosineField<T>& f, std::vector<MultiIndex>& idx) {
    std::vector<T> a;
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (Scalar<T>::isZero(f.coeffs()[i])) continue;
      const MultiIndex m = f.multiIndex(i);
      idx.push_back(m);
      a.push_back(f.coeffs()[i] * sqrt2Power<T>(m.nonzeroCount()));
    }
    return a;
  };
  std::vector<MultiIndex> iu, iv;
  const std::vector<T> au = unnormalized(u, iu);
  const std::vector<T> av = unnormalized(v, iv);

  const double weight = std::ldexp(1.0, -d);
  const std::size_t stride1 = static_cast<std::size_t>(dr);
  const std::size_t stride2 = stride1 * stride1;
  std::vector<T>& out = r.coeffs();
  for (std::size_t p = 0; p < iu.size(); ++p) {
    const MultiIndex& m = iu[p];
    for (std::size_t q = 0; q < iv.size(); ++q) {
      const MultiIndex& l = iv[q];
      const T w = (au[p] * av[q]) * weight;
      std::array<std::array<std::size_t, 2>, 3> t{};
      for (int a = 0; a < d; ++a) {
        t[static_cast<std::size_t>(a)] = {static_cast<std::size_t>(m[a] + l[a]),
                                          static_cast<std::size_t>(std::abs(m[a] - l[a]))};
      }
      if (d == 1) {
        out[t[0][0]] += w;
        out[t[0][1]] += w;
      } else if (d == 2) {
        for (int i = 0; i < 2; ++i) {
          for (int j = 0; j < 2; ++j) out[t[0][i] * stride1 + t[1][j]] += w;
        }
      } else {
        for (int i = 0; i < 2; ++i) {
          for (int j = 0; j < 2; ++j) {
            for (int k = 0; k < 2; ++k) out[t[0][i] * stride2 + t[1][j] * stride1 + t[2][k]] += w;
          }
        }
      }
    }
  }
  for (std::size_t f = 0; f < out.size(); ++f) {
    if (Scalar<T>::isZero(out[f])) continue;
    out[f] = out[f] * invSqrt2Power<T>(r.multiIndex(f).nonzeroCount());
  }
  return r;
}

template <class T>
BasicCosineField<T> projectPN(const BasicCosineField<T>& u, int n) {
  if (n < 1) return BasicCosineField<T>(u.dim(), 1);
  if (n >= u.degreeBound()) return u;
  return u.resized(n);
}

template <class T>
BasicCosineField<T> laplacianApply(const BasicCosineField<T>& u) {
  BasicCosineField<T> r = u;
  for (std::size_t f = 0; f < r.size(); ++f) {
    r.coeffs()[f] = -(kappaAs<T>(r.multiIndex(f)) * r.coeffs()[f]);
  }
  return r;
}

// ‖u‖_{H̄^ℓ} = (Σ_{k≠0} κ_k^ℓ α_k²)^{1/2}.  The mean mode is never part of
// the sum; for ℓ < 0 a nonzero mean is a domain error.
Interval hBarNorm(const CosineField& u, int ell);
Interval hBarNorm(const IntervalField& u, int ell);

// ‖u‖_{H^ℓ} = (Σ_k (1 + κ_k^ℓ) α_k²)^{1/2}, mean included (ℓ ≥ 0).
Interval hNorm(const CosineField& u, int ell);
Interval hNorm(const IntervalField& u, int ell);

// Upper bound on ‖u‖_∞: the smaller of Σ|α_k| c_k and the embedding bound
// (C̄_m ‖u‖_{H̄²} for zero-mean fields, C_m ‖u‖_{H²} otherwise).
Interval supNormUpperBound(const CosineField& u);
Interval supNormUpperBound(const IntervalField& u);

// Lemma 3.4 bound (π N)^{ℓ-m} ‖u‖_{H̄^m} on ‖(I - P_N)u‖_{H̄^ℓ}.
Interval tailNormBound(const CosineField& u, int n, int ell, int m);
Interval tailNormBound(const IntervalField& u, int n, int ell, int m);

struct SobolevConstants {
  double Cm;
  double CmBar;
  double Cb;
  double Ce;
};

SobolevConstants sobolevConstants(int dim);

// Per-axis factor ∫₀¹ φ_m φ_l φ_k for 1-D indices.
template <class T>
T tripleProductFactor(int m, int l, int k) {
  const int cnt = (m + l + k == 0) + (m + l == k) + (m + k == l) + (l + k == m);
  if (cnt == 0) return T(0.0);
  const int s = (m != 0) + (l != 0) + (k != 0);
  return sqrt2Power<T>(s) * (static_cast<double>(cnt) * 0.25);
}

// (c φ_l, φ_k)_{L²}, exact from the coefficients of c.
template <class T>
T multiplicationEntry(const BasicCosineField<T>& c, const MultiIndex& l, const MultiIndex& k) {
  const int d = c.dim();
  const int db = c.degreeBound();
  std::array<std::array<int, 2>, 3> cand{};
  std::array<int, 3> ncand{};
  for (int a = 0; a < d; ++a) {
    const int s = k[a] + l[a];
    const int t = std::abs(k[a] - l[a]);
    int n = 0;
    if (t < db) cand[static_cast<std::size_t>(a)][static_cast<std::size_t>(n++)] = t;
    if (s != t && s < db) cand[static_cast<std::size_t>(a)][static_cast<std::size_t>(n++)] = s;
    if (n == 0) return T(0.0);
    ncand[static_cast<std::size_t>(a)] = n;
  }
  T sum(0.0);
  MultiIndex m = MultiIndex::zero(d);
  std::array<int, 3> sel{};
  while (true) {
    for (int a = 0; a < d; ++a) m[a] = cand[static_cast<std::size_t>(a)][static_cast<std::size_t>(sel[static_cast<std::size_t>(a)])];
    const T& cm = c[m];
    if (!Scalar<T>::isZero(cm)) {
      T f = tripleProductFactor<T>(m[0], l[0], k[0]);
      for (int a = 1; a < d; ++a) f = f * tripleProductFactor<T>(m[a], l[a], k[a]);
      sum += cm * f;
    }
    int a = d - 1;
    while (a >= 0 && ++sel[static_cast<std::size_t>(a)] == ncand[static_cast<std::size_t>(a)]) {
      sel[static_cast<std::size_t>(a)] = 0;
      --a;
    }
    if (a < 0) break;
  }
  return sum;
}

// Point evaluation (plain fields only; not rigorous).
double evaluate(const CosineField& u, std::span<const double> x);

// Values at cell centres x_i = (i + 1/2)/n of a tensor grid, row-major with
// axis 0 slowest.
std::vector<double> evaluateOnGrid(const CosineField& u, int pointsPerAxis);

}  // namespace tbcp
