#pragma once

// Inverse-norm bound for the fourth-order operator family
//
//   L(η, v) = ( [Σ_i α_ki η_i + Σ_j (a_kj, v_j)_{H̄²}]_k ,
//               [-β_k Δ²v_k - Σ_i b_ki η_i - Δ Σ_j c_kj v_j - Σ_j γ_kj v_j]_k )
//
// as a map H̄²-type domain → H̄⁻²-type range: verified finite-dimensional
// bound K_N, tail constants A and B, and K = max(K_N, C_T)/(1 - τ).

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "tbcp/interval.hpp"
#include "tbcp/interval_matrix.hpp"
#include "tbcp/spectral.hpp"

namespace tbcp {

// Per-axis congruence k_a ≡ offset_a (mod stride_a); stride 1 admits all.
struct IndexSet {
  std::array<int, 3> stride{1, 1, 1};
  std::array<int, 3> offset{0, 0, 0};

  bool contains(const MultiIndex& k) const;
  friend bool operator==(const IndexSet&, const IndexSet&) = default;
};

struct LinearOperatorSpec {
  int dim = 1;
  int m = 0;  // scalar slots
  int n = 0;  // function slots
  std::vector<std::vector<Interval>> alpha;       // m × m
  std::vector<Interval> beta;                     // n, all > 0
  std::vector<std::vector<Interval>> gamma;       // n × n
  std::vector<std::vector<IntervalField>> aFields;  // m × n; empty field ≡ 0
  std::vector<std::vector<IntervalField>> bFields;  // n × m
  std::vector<std::vector<IntervalField>> cFields;  // n × n
  std::vector<IndexSet> indexSets;                // n
  int N = 2;

  // Fills empty containers with zeros/defaults for the declared sizes.
  static LinearOperatorSpec zeros(int dim, int m, int n, int N);

  // Throws std::invalid_argument when an invariant is violated.
  void check() const;

  // Modes of function slot i: k ∈ indexSets[i], 0 < |k|_∞ < N, lexicographic.
  std::vector<MultiIndex> modes(int i) const;
  std::size_t matrixSize() const;
};

struct OperatorVector {
  std::vector<double> scalars;
  std::vector<CosineField> fields;
};

// Spectral application of L (floating point; fields must be zero-mean).
OperatorVector applyL(const LinearOperatorSpec& spec, const OperatorVector& x);

// Matrix representation B in the basis {(e_l,0), (0,Φ_ik)} and its scaled
// version B̃ = D⁻¹ B D⁻¹ with D = diag(I_m, κ).
IntervalMatrix assembleB(const LinearOperatorSpec& spec);
IntervalMatrix assembleBTilde(const LinearOperatorSpec& spec);

InverseNormCertificate computeKN(const LinearOperatorSpec& spec);

struct TailConstants {
  Interval A;
  Interval B;
  Interval bScale;  // B · N², the N-independent factor used by estimateN
};

TailConstants tailConstants(const LinearOperatorSpec& spec, double kn);

struct InverseBoundReport {
  double KN = 0.0;
  double CT = 0.0;
  double A = 0.0;
  double B = 0.0;
  double tau = 0.0;
  double K = 0.0;
  double bScale = 0.0;
  double residual = 0.0;  // ‖I - B̃R‖ bound from the K_N certificate
  bool success = false;
  int N = 0;
  std::string message;
};

InverseBoundReport inverseBound(const LinearOperatorSpec& spec);

// Smallest N ≥ 1 with N² ≥ bConst / tauTarget.
int estimateN(double bConst, double tauTarget = 0.75);

}  // namespace tbcp
