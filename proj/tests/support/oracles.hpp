#pragma once

// Independent reference computations for the test suites.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

#include "tbcp/interval.hpp"
#include "tbcp/spectral.hpp"

namespace tbcp::oracle {

using Rational = boost::multiprecision::cpp_rational;

// Exact value of a finite double.
inline Rational exact(double x) {
  int e = 0;
  const double m = std::frexp(x, &e);
  // m·2^53 is an integer for every finite double.
  const auto mant = static_cast<std::int64_t>(std::ldexp(m, 53));
  Rational r(mant);
  e -= 53;
  const Rational two(2);
  if (e > 0) {
    for (int i = 0; i < e; ++i) r *= two;
  } else {
    Rational d(1);
    for (int i = 0; i < -e; ++i) d *= two;
    r /= d;
  }
  return r;
}

inline bool contains(const Interval& x, const Rational& v) { return exact(x.lo()) <= v && v <= exact(x.hi()); }

// Largest singular value via Jacobi SVD.
inline double svdNorm(const Eigen::MatrixXd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  return svd.singularValues()(0);
}

inline double svdInverseNorm(const Eigen::MatrixXd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  return 1.0 / svd.singularValues()(svd.singularValues().size() - 1);
}

// Basis function value φ_k(x).
inline double basisValue(const MultiIndex& k, const std::vector<double>& x) {
  double v = 1.0;
  for (int a = 0; a < k.dim(); ++a) {
    if (k[a] != 0) v *= std::sqrt(2.0) * std::cos(k[a] * M_PI * x[static_cast<std::size_t>(a)]);
  }
  return v;
}

// Direct evaluation Σ α_k φ_k(x).
inline double fieldValue(const CosineField& u, const std::vector<double>& x) {
  double s = 0.0;
  for (std::size_t f = 0; f < u.size(); ++f) s += u.coeffs()[f] * basisValue(u.multiIndex(f), x);
  return s;
}

// (g, φ_k) by the midpoint rule on m points per axis; exact for cosine
// polynomials of per-axis degree below 2m.
template <class G>
double project(G&& g, const MultiIndex& k, int m) {
  const int d = k.dim();
  std::vector<double> x(static_cast<std::size_t>(d));
  std::vector<int> idx(static_cast<std::size_t>(d), 0);
  double s = 0.0;
  while (true) {
    for (int a = 0; a < d; ++a) x[static_cast<std::size_t>(a)] = (idx[static_cast<std::size_t>(a)] + 0.5) / m;
    s += g(x) * basisValue(k, x);
    int a = d - 1;
    while (a >= 0 && ++idx[static_cast<std::size_t>(a)] == m) idx[static_cast<std::size_t>(a--)] = 0;
    if (a < 0) break;
  }
  return s / std::pow(static_cast<double>(m), d);
}

inline CosineField randomField(std::mt19937_64& rng, int dim, int degreeBound, bool zeroMean = false) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  CosineField f(dim, degreeBound);
  for (auto& c : f.coeffs()) c = u(rng);
  if (zeroMean) f.coeffs()[0] = 0.0;
  return f;
}

}  // namespace tbcp::oracle
