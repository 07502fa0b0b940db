#pragma once

// Dense interval matrices and verified 2-norm / inverse-norm bounds.

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "tbcp/interval.hpp"

namespace tbcp {

class IntervalMatrix {
 public:
  IntervalMatrix() = default;
  IntervalMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols) {}

  static IntervalMatrix identity(std::size_t n);
  static IntervalMatrix fromPoint(const Eigen::MatrixXd& m);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Interval& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const Interval& operator()(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }

  const std::vector<Interval>& entries() const { return entries_; }
  std::vector<Interval>& entries() { return entries_; }

  // Midpoint and radius matrices with [lo,hi] ⊆ [mid-rad, mid+rad] entrywise.
  Eigen::MatrixXd midpoint() const;
  Eigen::MatrixXd radius() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Interval> entries_;
};

// Upper bound on ‖M'‖₂ for every point matrix M' in M:
// sqrt(‖|M|‖₁ ‖|M|‖∞), rounded up.
double verified2NormUpperBound(const IntervalMatrix& m);
double verified2NormUpperBound(const Eigen::MatrixXd& m);

struct InverseNormCertificate {
  bool success = false;
  double bound = 0.0;          // K with ‖A'⁻¹‖₂ ≤ K for all A' in A
  double residual = 0.0;       // r ≥ ‖I - A'R‖₂
  double inverseNorm = 0.0;    // verified ‖R‖₂ bound
  std::string message;
};

// Neumann argument at matrix level: R ≈ A⁻¹ from LU with partial pivoting,
// r ≥ ‖I - A'R‖₂ for all A' ∈ A; if r < 1 then ‖A'⁻¹‖₂ ≤ ‖R‖₂/(1-r).
// The product A·R is evaluated in midpoint-radius form with Eigen's GEMM
// and a priori floating-point error bounds.
InverseNormCertificate verifiedInverseNormBound(const IntervalMatrix& a);
// Consumes the matrix so its storage can be released before the products.
InverseNormCertificate verifiedInverseNormBound(IntervalMatrix&& a);
// Uses a caller-supplied approximate inverse.
InverseNormCertificate verifiedInverseNormBound(const IntervalMatrix& a,
                                                const Eigen::MatrixXd& approxInverse);

}  // namespace tbcp
