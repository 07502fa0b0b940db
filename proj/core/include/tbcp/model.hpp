#pragma once

// Triblock copolymer model: triple-well potential g, the projected
// nonlinearity f = (f1, f2), homogeneous-state stability.

#include <array>
#include <vector>

#include "tbcp/interval.hpp"
#include "tbcp/spectral.hpp"

namespace tbcp {

struct MassVector {
  double mu1 = 1.0 / 3.0;
  double mu2 = 1.0 / 3.0;
  double mu3 = 1.0 / 3.0;

  // mu3 = 1 - mu1 - mu2 (rounded).
  static MassVector fromPair(double mu1, double mu2);
  // Checks the three components sum to one within 1e-12.
  static MassVector fromTriple(double mu1, double mu2, double mu3);
};

struct ModelParams {
  int dim = 1;
  double sigma = 0.0;
  double lambda = 1.0;  // λ = 1/ε²
  MassVector mass;

  // Throws std::invalid_argument on out-of-range parameters.
  void check() const;
};

enum class StabilityTag { Stable, OneUnstable, TwoUnstable };

struct StabilityClass {
  StabilityTag tag = StabilityTag::Stable;
  double nu1 = 0.0;  // nu1 >= nu2
  double nu2 = 0.0;
};

const char* toString(StabilityTag tag);

template <class T>
T gVal(const T& s) {
  const T t = T(1.0) - s;
  return T(6.75) * (s * s) * (t * t);
}
template <class T>
T gPrime(const T& s) {
  return T(13.5) * s * (T(1.0) - s) * (T(1.0) - T(2.0) * s);
}
template <class T>
T gDoublePrime(const T& s) {
  return T(13.5) * (T(1.0) - T(6.0) * s + T(6.0) * (s * s));
}
template <class T>
T gTriplePrime(const T& s) {
  return T(81.0) * (T(2.0) * s - T(1.0));
}

// Bivariate polynomial Σ c_pq x^p y^q of total degree ≤ 3 with interval
// coefficients (the 1/3 of f is not representable).
struct BivariatePoly {
  std::array<Interval, 16> c{};  // c[4p+q]

  Interval& coef(int p, int q) { return c[static_cast<std::size_t>(4 * p + q)]; }
  const Interval& coef(int p, int q) const { return c[static_cast<std::size_t>(4 * p + q)]; }

  BivariatePoly dx() const;
  BivariatePoly dy() const;
  // Coefficients of z ↦ P(x0 + z1, y0 + z2), computed in interval arithmetic.
  BivariatePoly shifted(double x0, double y0) const;

  Interval eval(const Interval& x, const Interval& y) const;
  double eval(double x, double y) const;
};

// f1, f2 as polynomials in (u1, u2).
const std::array<BivariatePoly, 2>& fPolynomials();

template <class T>
using FieldPair = std::array<BasicCosineField<T>, 2>;

std::array<double, 2> fEval(double u1, double u2);
std::array<Interval, 2> fEval(const Interval& u1, const Interval& u2);

// J[i][j] = ∂f_i/∂z_j
std::array<std::array<double, 2>, 2> dfJacobian(double u1, double u2);
std::array<std::array<Interval, 2>, 2> dfJacobian(const Interval& u1, const Interval& u2);
// T[i][j][k] = ∂²f_i/∂z_j∂z_k
std::array<std::array<std::array<double, 2>, 2>, 2> d2fTensor(double u1, double u2);
std::array<std::array<std::array<Interval, 2>, 2>, 2> d2fTensor(const Interval& u1, const Interval& u2);

// Exact cosine coefficients of f(μ + w) and Df(μ + w).
FieldPair<double> fFieldComposition(const FieldPair<double>& w, const MassVector& mass);
FieldPair<Interval> fFieldComposition(const FieldPair<Interval>& w, const MassVector& mass);
std::array<FieldPair<double>, 2> dfFieldComposition(const FieldPair<double>& w, const MassVector& mass);
std::array<FieldPair<Interval>, 2> dfFieldComposition(const FieldPair<Interval>& w,
                                                       const MassVector& mass);

std::array<std::array<double, 2>, 2> homogeneousM(const MassVector& mass);

struct HomogeneousSpectrum {
  double nu1 = 0.0;
  double nu2 = 0.0;
  std::array<double, 2> p1{};  // unit eigenvectors of M
  std::array<double, 2> p2{};
};

HomogeneousSpectrum homogeneousSpectrum(const MassVector& mass);
StabilityClass classifyStability(const MassVector& mass);

// λ_{j,k} = κ_k (ν_j - ε² κ_k) - σ
double lambdaJK(int j, const MultiIndex& k, double eps2, double sigma, const MassVector& mass);

struct StabilityPoint {
  double mu1, mu2, mu3;
  StabilityClass cls;
};

struct StabilityRaster {
  int resolution = 0;
  std::vector<StabilityPoint> points;  // barycentric grid i/(r-1), j/(r-1), i+j ≤ r-1
};

StabilityRaster stabilityGrid(int resolution);

}  // namespace tbcp
