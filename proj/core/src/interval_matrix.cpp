#include "tbcp/interval_matrix.hpp"

#include <optional>
#include <stdexcept>
#include <utility>

namespace tbcp {

using namespace rounding;

IntervalMatrix IntervalMatrix::identity(std::size_t n) {
  IntervalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Interval(1.0);
  return m;
}

IntervalMatrix IntervalMatrix::fromPoint(const Eigen::MatrixXd& p) {
  IntervalMatrix m(static_cast<std::size_t>(p.rows()), static_cast<std::size_t>(p.cols()));
  for (Eigen::Index i = 0; i < p.rows(); ++i) {
    for (Eigen::Index j = 0; j < p.cols(); ++j) m(i, j) = Interval(p(i, j));
  }
  return m;
}

Eigen::MatrixXd IntervalMatrix::midpoint() const {
  Eigen::MatrixXd m(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j).mid();
  }
  return m;
}

Eigen::MatrixXd IntervalMatrix::radius() const {
  Eigen::MatrixXd m(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j).rad();
  }
  return m;
}

namespace {

// Running upper bounds on row and column sums of a nonnegative matrix.
struct AbsSums {
  explicit AbsSums(Eigen::Index n, Eigen::Index m) : row(n, 0.0), col(m, 0.0) {}
  void add(Eigen::Index i, Eigen::Index j, double v) {
    row[i] = addUp(row[i], v);
    col[j] = addUp(col[j], v);
  }
  void merge(const AbsSums& o) {
    for (std::size_t i = 0; i < row.size(); ++i) row[i] = addUp(row[i], o.row[i]);
    for (std::size_t j = 0; j < col.size(); ++j) col[j] = addUp(col[j], o.col[j]);
  }
  double bound() const {
    double n1 = 0.0, ninf = 0.0;
    for (double c : col) n1 = std::fmax(n1, c);
    for (double r : row) ninf = std::fmax(ninf, r);
    return sqrtUp(mulUp(n1, ninf));
  }
  std::vector<double> row, col;
};

bool allFinite(const Eigen::MatrixXd& m) { return m.allFinite(); }

void splitMidRad(const IntervalMatrix& a, Eigen::MatrixXd& mid, Eigen::MatrixXd& rad) {
  const auto n = static_cast<Eigen::Index>(a.rows());
  const auto m = static_cast<Eigen::Index>(a.cols());
  mid.resize(n, m);
  rad.resize(n, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const Interval& x = a(i, j);
      mid(i, j) = x.mid();
      rad(i, j) = x.rad();
    }
  }
}

InverseNormCertificate certify(Eigen::MatrixXd mid, Eigen::MatrixXd rad,
                               std::optional<Eigen::MatrixXd> given) {
  InverseNormCertificate out;
  const Eigen::Index n = mid.rows();
  if (n != mid.cols()) throw std::invalid_argument("verifiedInverseNormBound: matrix not square");
  if (n == 0) {
    out.success = true;
    return out;
  }
  if (!allFinite(mid) || !allFinite(rad)) {
    out.message = "non-finite matrix entries";
    return out;
  }

  Eigen::MatrixXd r;
  if (given) {
    r = std::move(*given);
    if (r.rows() != n || r.cols() != n) {
      throw std::invalid_argument("verifiedInverseNormBound: approximate inverse has wrong shape");
    }
  } else {
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(mid);
    r = lu.inverse();
  }
  if (!allFinite(r)) {
    out.message = "approximate inverse is not finite (singular midpoint matrix)";
    return out;
  }

  const double dn = static_cast<double>(n);
  const double u = 0x1p-53;
  const double nu = mulUp(dn, u);
  if (nu >= 0.5) throw std::invalid_argument("verifiedInverseNormBound: dimension too large");
  const double gamma = divUp(nu, subDown(1.0, nu));
  // Absolute underflow allowance per dot product entry.
  const double eta = mulUp(dn + 2.0, 0x1p-1074);

  AbsSums sums(n, n);
  {
    Eigen::MatrixXd c(n, n);
    c.noalias() = mid * r;
    for (Eigen::Index j = 0; j < n; ++j) {
      for (Eigen::Index i = 0; i < n; ++i) {
        const double d = (i == j) ? 1.0 : 0.0;
        const double e = std::fmax(std::fabs(subDown(d, c(i, j))), std::fabs(subUp(d, c(i, j))));
        sums.add(i, j, addUp(e, eta));
      }
    }
  }
  // rad <- gamma |mid| + rad, then the radius/rounding contribution
  // (gamma|mid| + rad)|R| with its own a priori bound.
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      rad(i, j) = addUp(mulUp(gamma, std::fabs(mid(i, j))), rad(i, j));
    }
  }
  mid.resize(0, 0);
  {
    const double scale = divUp(1.0, subDown(1.0, gamma));
    Eigen::MatrixXd absR = r.cwiseAbs();
    Eigen::MatrixXd p(n, n);
    p.noalias() = rad * absR;
    absR.resize(0, 0);
    rad.resize(0, 0);
    AbsSums ps(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
      for (Eigen::Index i = 0; i < n; ++i) {
        ps.add(i, j, addUp(mulUp(p(i, j), scale), eta));
      }
    }
    sums.merge(ps);
  }

  out.residual = sums.bound();
  out.inverseNorm = verified2NormUpperBound(r);
  if (!(out.residual < 1.0)) {
    out.message = "residual bound ‖I - A R‖ >= 1; invertibility not certified";
    return out;
  }
  out.bound = divUp(out.inverseNorm, subDown(1.0, out.residual));
  out.success = std::isfinite(out.bound);
  if (!out.success) out.message = "inverse bound overflow";
  return out;
}

}  // namespace

double verified2NormUpperBound(const IntervalMatrix& m) {
  AbsSums s(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      s.add(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j), m(i, j).mag());
    }
  }
  return s.bound();
}

double verified2NormUpperBound(const Eigen::MatrixXd& m) {
  AbsSums s(m.rows(), m.cols());
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) s.add(i, j, std::fabs(m(i, j)));
  }
  return s.bound();
}

InverseNormCertificate verifiedInverseNormBound(const IntervalMatrix& a) {
  Eigen::MatrixXd mid, rad;
  splitMidRad(a, mid, rad);
  return certify(std::move(mid), std::move(rad), std::nullopt);
}

InverseNormCertificate verifiedInverseNormBound(IntervalMatrix&& a) {
  Eigen::MatrixXd mid, rad;
  splitMidRad(a, mid, rad);
  { IntervalMatrix released = std::move(a); }
  return certify(std::move(mid), std::move(rad), std::nullopt);
}

InverseNormCertificate verifiedInverseNormBound(const IntervalMatrix& a,
                                                const Eigen::MatrixXd& approxInverse) {
  Eigen::MatrixXd mid, rad;
  splitMidRad(a, mid, rad);
  return certify(std::move(mid), std::move(rad), approxInverse);
}

}  // namespace tbcp
