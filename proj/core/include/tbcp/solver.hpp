#pragma once

// Non-rigorous spectral Galerkin machinery: residual, Jacobian, Newton,
// kernel seeding and natural-parameter continuation.

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "tbcp/model.hpp"
#include "tbcp/spectral.hpp"

namespace tbcp {

// Default solver cutoffs per dimension.
int defaultSolverCutoff(int dim);

// Unknowns w_{i,k} for i ∈ {1,2} and 0 < |k|, |k|_∞ < nsol, component-major,
// multi-indices in lexicographic order.
class GalerkinLayout {
 public:
  GalerkinLayout(int dim, int nsol);

  int dim() const { return dim_; }
  int nsol() const { return nsol_; }
  const std::vector<MultiIndex>& modes() const { return modes_; }
  Eigen::Index size() const { return 2 * static_cast<Eigen::Index>(modes_.size()); }

  Eigen::VectorXd pack(const FieldPair<double>& w) const;
  FieldPair<double> unpack(const Eigen::VectorXd& x) const;

 private:
  int dim_;
  int nsol_;
  std::vector<MultiIndex> modes_;
};

struct CandidateEquilibrium {
  ModelParams params;
  FieldPair<double> w;
  int nsol = 0;
  double residualNorm = 0.0;  // ‖P_nsol ℱ(λ, w)‖_Y, floating point
  int morseIndex = -1;        // non-rigorous; -1 when not computed
};

// r_{i,k} = -κ_k² w_{i,k} + λ κ_k f_{i,k}(μ+w) - λσ w_{i,k}
Eigen::VectorXd galerkinResidual(const ModelParams& params, const FieldPair<double>& w, int nsol);
Eigen::MatrixXd galerkinJacobian(const ModelParams& params, const FieldPair<double>& w, int nsol);
// ‖·‖_Y of a residual vector in layout order.
double residualNormY(const GalerkinLayout& layout, const Eigen::VectorXd& r);

// Number of Jacobian eigenvalues with positive real part, computed on the
// leading modes (|k|_∞ below a cutoff derived from λ·‖Df‖_∞).
int morseIndex(const ModelParams& params, const FieldPair<double>& w, int nsol);

enum class NewtonStatus { Converged, MaxIterations, SingularJacobian, Diverged };
const char* toString(NewtonStatus s);

struct NewtonSettings {
  double tol = 1e-10;
  int maxIter = 50;
  bool computeIndex = true;
};

struct NewtonResult {
  NewtonStatus status = NewtonStatus::MaxIterations;
  int iterations = 0;
  CandidateEquilibrium solution;
  std::string message;
  bool converged() const { return status == NewtonStatus::Converged; }
};

NewtonResult newtonSolve(const ModelParams& params, const FieldPair<double>& initial, int nsol,
                         const NewtonSettings& settings = {});

// amplitude · p_j φ_k with p_j the j-th eigenvector of the homogeneous M.
FieldPair<double> seedFromKernel(const ModelParams& params, int j, const MultiIndex& k,
                                 double amplitude, int nsol);

// λ at which the homogeneous state loses stability in mode (j, k), or a
// negative value if it never does.
double bifurcationLambda(const ModelParams& params, int j, const MultiIndex& k);

// Image under x_axis ↦ 1 - x_axis (coefficient k picks up (-1)^{k_axis}).
FieldPair<double> reflect(const FieldPair<double>& w, int axis);

// L² norm of the pair.
double solutionNorm(const FieldPair<double>& w);
// 𝒳 = H̄² × H̄² norm of a - b, as an enclosure.
Interval xDistance(const FieldPair<double>& a, const FieldPair<double>& b);

struct StepPolicy {
  double initialStep = 0.5;
  double minStep = 1e-6;
  double maxStep = 2.0;
  double growth = 1.5;
  // Steps whose L² change exceeds this fraction of max(‖w‖, 1e-3) are
  // rejected, which keeps the corrector from jumping between branches.
  double maxRelativeChange = 0.5;
};

struct BranchPoint {
  double lambda = 0.0;
  double solutionNorm = 0.0;
  int morseIndex = -1;
};

struct BifurcationCandidate {
  double lambdaBefore = 0.0;
  double lambdaAfter = 0.0;
  int indexBefore = 0;
  int indexAfter = 0;
  std::size_t pointIndex = 0;  // index of the point after the change
};

struct Branch {
  std::vector<BranchPoint> points;
  std::vector<CandidateEquilibrium> solutions;
  std::vector<BifurcationCandidate> indexChanges;
  bool reachedEnd = false;
  std::string termination;
};

// Natural-parameter continuation from start towards lambdaEnd; the
// predictor is the previous solution, the corrector Newton.  Failed steps
// are halved; below minStep the branch terminates.
Branch continueBranch(const CandidateEquilibrium& start, double lambdaEnd, const StepPolicy& policy = {},
                      const NewtonSettings& settings = {});

// Eigenvector of the Jacobian for the eigenvalue of smallest modulus.
FieldPair<double> approximateKernel(const ModelParams& params, const FieldPair<double>& w, int nsol);

// Newton seeded with base + amplitude·kernel.
NewtonResult switchBranch(const CandidateEquilibrium& base, const FieldPair<double>& kernel,
                          double amplitude, const NewtonSettings& settings = {});

struct KernelSeed {
  int j = 1;
  MultiIndex k{1};
  double amplitude = 0.05;
};

// Solution at params.lambda on the branch bifurcating from mode (j, k):
// Newton near the bifurcation point (doubling the amplitude until the result
// is nontrivial), then natural continuation to the target.  When the mode
// never bifurcates below the target, Newton runs directly at the target.
NewtonResult solveFromKernel(const ModelParams& params, const KernelSeed& seed, int nsol,
                             const NewtonSettings& settings = {}, const StepPolicy& policy = {});

}  // namespace tbcp
