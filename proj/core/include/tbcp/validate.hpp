#pragma once

// Certificate construction for equilibria of the triblock model: residual
// bound ρ, inverse bound K, Lipschitz constants L1–L4 and the radii
// (δ_λ, δ_w) of the constructive implicit function theorem.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "tbcp/model.hpp"
#include "tbcp/normbound.hpp"
#include "tbcp/solver.hpp"

namespace tbcp {

// ‖ℱ(λ*, w*)‖_Y as an enclosure.
Interval residualBound(const ModelParams& params, const FieldPair<double>& wStar);

// ‖w‖_I = (‖w₁‖²_∞ + ‖w₂‖²_∞)^{1/2}, upper bound.
double iNormUpperBound(const FieldPair<double>& w);

struct LipschitzBundle {
  std::array<double, 4> L{};  // L1..L4
  double f1Max = 0.0;
  double f2Max = 0.0;
  double f1Star = 0.0;
  double ellW = 0.0;
  double ellLambda = 0.0;
};

LipschitzBundle lipschitzConstants(const ModelParams& params, const FieldPair<double>& wStar, double ellW,
                                   double ellLambda);

// D_wℱ(λ*, w*) as (β, γ, c) = ((1,1), λσI, λ Df(μ+w*)), m = 0, n = 2.
LinearOperatorSpec buildLinearizationSpec(const ModelParams& params, const FieldPair<double>& wStar, int N);

struct CiftRadii {
  bool success = false;
  double deltaLambda = 0.0;
  double deltaW = 0.0;
  std::string message;
};

CiftRadii ciftRadii(double K, double rho, const LipschitzBundle& bundle);

struct StageRecord {
  std::string name;
  std::string status;  // "ok", "failed", "skipped"
  std::string detail;
};

struct Provenance {
  std::string tool = "tbcp";
  std::string version;
  std::string created;  // ISO 8601 UTC
};

struct ValidationSettings {
  int N = 0;  // 0 selects N automatically
  double tauTarget = 0.75;
  double ellW = 0.1;
  double ellLambda = -1.0;  // negative: 0.01 λ*
  int maxRetries = 3;
  std::size_t maxMatrixSize = 9000;  // guards the dense K_N computation
};

struct ValidationCertificate {
  ModelParams params;
  std::string solutionFile;
  int N = 0;
  double rho = 0.0;
  InverseBoundReport report;
  LipschitzBundle lipschitz;
  double deltaLambda = 0.0;
  double deltaW = 0.0;
  bool success = false;
  std::vector<StageRecord> stages;
  Provenance provenance;
};

ValidationCertificate validateEquilibrium(const ModelParams& params, const FieldPair<double>& wStar,
                                          const ValidationSettings& settings = {});

struct RecheckItem {
  std::string name;
  bool ok = false;
  std::string detail;
};

struct RecheckReport {
  bool passed = false;
  std::vector<RecheckItem> items;
};

// Re-verifies every inequality from the stored constants.  With wStar the
// solution-dependent constants (ρ, B, L, f-bounds) are recomputed and must
// not exceed the stored values; `full` also recomputes K_N.
RecheckReport recheckCertificate(const ValidationCertificate& cert,
                                 const std::optional<FieldPair<double>>& wStar = std::nullopt,
                                 bool full = false);

const char* libraryVersion();

}  // namespace tbcp
