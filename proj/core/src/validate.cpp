#include "tbcp/validate.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <stdexcept>

namespace tbcp {

using namespace rounding;

const char* libraryVersion() { return "0.1.0"; }

namespace {

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6e", v);
  return buf;
}

std::string utcNow() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

FieldPair<Interval> toInterval(const FieldPair<double>& w) { return {tbcp::toInterval(w[0]), tbcp::toInterval(w[1])}; }

void checkPair(const FieldPair<double>& w, int dim) {
  for (const auto& c : w) {
    if (c.dim() != dim) throw std::invalid_argument("solution dimension does not match the parameters");
    if (!c.isZeroMean()) throw std::invalid_argument("solution components must be zero-mean");
    for (double v : c.coeffs()) {
      if (!std::isfinite(v)) throw std::invalid_argument("solution has non-finite coefficients");
    }
  }
}

// Σ_k κ_k⁻² (κ_k a·f_k + b·w_k)² over k ≠ 0, i.e. ‖-Δ(a f) + b w‖²_{H̄⁻²}.
Interval ySquared(const IntervalField& f, const IntervalField& w, const Interval& a, const Interval& b) {
  Interval s(0.0);
  const int db = std::max(f.degreeBound(), w.degreeBound());
  const int d = f.dim();
  for (const MultiIndex& k : multiIndicesBelow(d, db)) {
    if (k.isZero()) continue;
    const Interval kap = kappa(k);
    const Interval r = kap * a * f.coefficient(k) + b * w.coefficient(k);
    if (Scalar<Interval>::isZero(r)) continue;
    s += sqr(r) / sqr(kap);
  }
  return s;
}

int degreeOf(const FieldPair<double>& w) { return std::max(w[0].degreeBound(), w[1].degreeBound()); }

std::size_t fullMatrixSize(int dim, int N) {
  std::size_t s = 1;
  for (int a = 0; a < dim; ++a) s *= static_cast<std::size_t>(N);
  return 2 * (s - 1);
}

// Outward-rounded left-hand sides of the two inequalities of Theorem 2.2.
struct Thm2 {
  double first;   // 2K L1 δ_w + 2K L2 δ_λ
  double second;  // 2Kρ + 2K L3 δ_λ + 2K L4 δ_λ²
};

Thm2 thm2(double K, double rho, const std::array<double, 4>& L, double dl, double dw) {
  const Interval k2 = Interval(2.0) * Interval(K);
  const Interval first = k2 * Interval(L[0]) * Interval(dw) + k2 * Interval(L[1]) * Interval(dl);
  const Interval second =
      k2 * Interval(rho) + k2 * Interval(L[2]) * Interval(dl) + k2 * Interval(L[3]) * sqr(Interval(dl));
  return {first.hi(), second.hi()};
}

// Largest δ_w permitted by the first inequality and by ℓ_w.
double deltaWMax(double K, const LipschitzBundle& b, double dl) {
  const Interval k2 = Interval(2.0) * Interval(K);
  const double num = (Interval(1.0) - k2 * Interval(b.L[1]) * Interval(dl)).lo();
  const double den = (k2 * Interval(b.L[0])).hi();
  if (den == 0.0) return num > 0 ? b.ellW : -1.0;
  return std::fmin(b.ellW, divDown(num, den));
}

}  // namespace

Interval residualBound(const ModelParams& params, const FieldPair<double>& wStar) {
  params.check();
  checkPair(wStar, params.dim);
  const FieldPair<Interval> wi = toInterval(wStar);
  const FieldPair<Interval> f = fFieldComposition(wi, params.mass);
  const Interval lam(params.lambda);
  Interval s(0.0);
  for (int i = 0; i < 2; ++i) {
    // r_k = -κ² w_k + λκ f_k - λσ w_k = κ(λ f_k - κ w_k) - λσ w_k
    const int db = std::max(f[i].degreeBound(), wi[i].degreeBound());
    for (const MultiIndex& k : multiIndicesBelow(params.dim, db)) {
      if (k.isZero()) continue;
      const Interval kap = kappa(k);
      const Interval wk = wi[i].coefficient(k);
      const Interval r = kap * (lam * f[i].coefficient(k) - kap * wk) - lam * Interval(params.sigma) * wk;
      if (Scalar<Interval>::isZero(r)) continue;
      s += sqr(r) / sqr(kap);
    }
  }
  return sqrt(s);
}

double iNormUpperBound(const FieldPair<double>& w) {
  const Interval a = w[0].dim() ? supNormUpperBound(w[0]) : Interval(0.0);
  const Interval b = w[1].dim() ? supNormUpperBound(w[1]) : Interval(0.0);
  return sqrt(sqr(Interval(a.hi())) + sqr(Interval(b.hi()))).hi();
}

LipschitzBundle lipschitzConstants(const ModelParams& params, const FieldPair<double>& wStar, double ellW,
                                   double ellLambda) {
  params.check();
  checkPair(wStar, params.dim);
  if (!(ellW > 0)) throw std::invalid_argument("ellW must be positive");
  if (!(ellLambda >= 0)) throw std::invalid_argument("ellLambda must be non-negative");
  const SobolevConstants sc = sobolevConstants(params.dim);

  LipschitzBundle b;
  b.ellW = ellW;
  b.ellLambda = ellLambda;

  // Bounding box [-r, r]² of R = {‖z‖ ≤ ‖w*‖_I + C̄_m ℓ_w}.
  const double r = (Interval(iNormUpperBound(wStar)) + Interval(sc.CmBar) * Interval(ellW)).hi();
  const Interval box(-r, r);
  const auto& f = fPolynomials();
  for (int i = 0; i < 2; ++i) {
    const std::array<BivariatePoly, 2> d1{f[i].dx(), f[i].dy()};
    for (int j = 0; j < 2; ++j) {
      b.f1Max = std::fmax(b.f1Max, d1[j].shifted(params.mass.mu1, params.mass.mu2).eval(box, box).mag());
      const std::array<BivariatePoly, 2> d2{d1[j].dx(), d1[j].dy()};
      for (int k = 0; k < 2; ++k) {
        b.f2Max = std::fmax(b.f2Max, d2[k].shifted(params.mass.mu1, params.mass.mu2).eval(box, box).mag());
      }
    }
  }
  const auto df = dfFieldComposition(toInterval(wStar), params.mass);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) b.f1Star = std::fmax(b.f1Star, supNormUpperBound(df[i][j]).hi());
  }

  const Interval pi2 = sqr(Interval::pi());
  const Interval lamBar = Interval(std::fabs(params.lambda)) + Interval(ellLambda);
  b.L[0] = (Interval(2.0) * Interval::sqrt2() * Interval(sc.CmBar) * lamBar * Interval(b.f2Max) / pi2).hi();
  b.L[1] = (Interval(2.0) * Interval(b.f1Star) / pi2 + Interval(params.sigma) / sqr(pi2)).hi();
  // ‖D_λℱ(λ, w*)‖_Y = ‖-Δ f(μ+w*) - σ w*‖_Y, independent of λ
  const FieldPair<Interval> wi = toInterval(wStar);
  const FieldPair<Interval> fw = fFieldComposition(wi, params.mass);
  Interval s(0.0);
  for (int i = 0; i < 2; ++i) s += ySquared(fw[i], wi[i], Interval(1.0), Interval(-params.sigma));
  b.L[2] = sqrt(s).hi();
  b.L[3] = 0.0;
  return b;
}

LinearOperatorSpec buildLinearizationSpec(const ModelParams& params, const FieldPair<double>& wStar, int N) {
  params.check();
  checkPair(wStar, params.dim);
  LinearOperatorSpec spec = LinearOperatorSpec::zeros(params.dim, 0, 2, N);
  const auto df = dfFieldComposition(toInterval(wStar), params.mass);
  const Interval lam(params.lambda);
  const Interval ls = lam * Interval(params.sigma);
  for (int k = 0; k < 2; ++k) {
    for (int j = 0; j < 2; ++j) {
      spec.cFields[k][j] = lam * df[k][j];
      spec.gamma[k][j] = k == j ? ls : Interval(0.0);
    }
  }
  return spec;
}

CiftRadii ciftRadii(double K, double rho, const LipschitzBundle& b) {
  CiftRadii out;
  if (!(K > 0) || !(rho >= 0) || !(b.ellW > 0) || !(b.ellLambda >= 0)) {
    out.message = "invalid inputs";
    return out;
  }
  for (double l : b.L) {
    if (!(l >= 0) || !std::isfinite(l)) {
      out.message = "Lipschitz constants must be finite and non-negative";
      return out;
    }
  }
  const Interval k(K);
  const double t1 = (Interval(4.0) * sqr(k) * Interval(rho) * Interval(b.L[0])).hi();
  if (!(t1 < 1.0)) {
    out.message = "4K^2 rho L1 = " + sci(t1) + " is not < 1";
    return out;
  }
  const double t2 = (Interval(2.0) * k * Interval(rho)).hi();
  if (!(t2 < b.ellW)) {
    out.message = "2K rho = " + sci(t2) + " is not < ell_w = " + sci(b.ellW);
    return out;
  }

  auto feasible = [&](double dl) {
    const double wmin = thm2(K, rho, b.L, dl, 0.0).second;
    const double wmax = deltaWMax(K, b, dl);
    return wmax > 0 && wmin <= wmax;
  };
  double lo = 0.0, hi = b.ellLambda;
  if (!feasible(lo)) {
    out.message = "no feasible radius pair at delta_lambda = 0";
    return out;
  }
  if (feasible(hi)) {
    lo = hi;
  } else {
    for (int it = 0; it < 60; ++it) {
      const double m = 0.5 * (lo + hi);
      if (feasible(m)) lo = m;
      else hi = m;
    }
  }
  out.deltaLambda = lo;
  const double wmin = thm2(K, rho, b.L, lo, 0.0).second;
  out.deltaW = wmin > 0 ? wmin : deltaWMax(K, b, lo);
  const Thm2 t = thm2(K, rho, b.L, out.deltaLambda, out.deltaW);
  if (!(t.first <= 1.0) || !(t.second <= out.deltaW) || !(out.deltaW > 0) || !(out.deltaW <= b.ellW)) {
    out.message = "radius pair failed the final check";
    return out;
  }
  out.success = true;
  return out;
}

ValidationCertificate validateEquilibrium(const ModelParams& params, const FieldPair<double>& wStar,
                                          const ValidationSettings& settings) {
  params.check();
  checkPair(wStar, params.dim);
  ValidationCertificate cert;
  cert.params = params;
  cert.provenance.version = libraryVersion();
  cert.provenance.created = utcNow();

  auto stage = [&](const std::string& name, bool ok, const std::string& detail) {
    cert.stages.push_back({name, ok ? "ok" : "failed", detail});
  };
  auto skip = [&](const std::string& name) { cert.stages.push_back({name, "skipped", "earlier stage failed"}); };

  // (H1)
  const Interval rho = residualBound(params, wStar);
  cert.rho = rho.hi();
  const bool rhoOk = std::isfinite(cert.rho);
  stage("residual", rhoOk, "rho = " + sci(cert.rho));

  // (H2)
  const bool autoN = settings.N <= 0;
  const double bScale = tailConstants(buildLinearizationSpec(params, wStar, 2), 0.0).bScale.hi();
  int N = autoN ? std::max(estimateN(bScale, settings.tauTarget), degreeOf(wStar)) : settings.N;
  N = std::max(N, 2);
  InverseBoundReport rep;
  std::string invDetail;
  for (int attempt = 0; attempt <= settings.maxRetries; ++attempt) {
    if (fullMatrixSize(params.dim, N) > settings.maxMatrixSize) {
      rep = InverseBoundReport{};
      rep.N = N;
      rep.message = "N = " + std::to_string(N) + " exceeds the matrix size cap";
      break;
    }
    rep = inverseBound(buildLinearizationSpec(params, wStar, N));
    if (rep.success || !autoN) break;
    int next = static_cast<int>(std::ceil(1.25 * N));
    if (rep.KN > 0) {
      // A(N)·N² and B(N)·N² are treated as N-independent.
      const double aScale = rep.A * static_cast<double>(N) * static_cast<double>(N);
      next = std::max(next, estimateN(std::hypot(aScale, bScale), settings.tauTarget));
    }
    if (attempt < settings.maxRetries && fullMatrixSize(params.dim, next) > settings.maxMatrixSize) {
      int cap = N;
      while (fullMatrixSize(params.dim, cap + 1) <= settings.maxMatrixSize) ++cap;
      if (cap == N) break;
      next = cap;
    }
    N = next;
  }
  cert.N = rep.N;
  cert.report = rep;
  if (rep.success) {
    invDetail = "N = " + std::to_string(rep.N) + ", K_N = " + sci(rep.KN) + ", tau = " + sci(rep.tau) +
                ", K = " + sci(rep.K);
  } else {
    invDetail = "N = " + std::to_string(rep.N) + ": " + rep.message;
  }
  stage("inverse", rep.success, invDetail);

  // (H3), (H4)
  const double ellLambda = settings.ellLambda >= 0 ? settings.ellLambda : 0.01 * std::fabs(params.lambda);
  cert.lipschitz = lipschitzConstants(params, wStar, settings.ellW, ellLambda);
  const auto& L = cert.lipschitz.L;
  stage("lipschitz", true,
        "L = (" + sci(L[0]) + ", " + sci(L[1]) + ", " + sci(L[2]) + ", " + sci(L[3]) + ")");

  if (rhoOk && rep.success) {
    const CiftRadii cr = ciftRadii(rep.K, cert.rho, cert.lipschitz);
    cert.deltaLambda = cr.deltaLambda;
    cert.deltaW = cr.deltaW;
    stage("cift", cr.success,
          cr.success ? "delta_lambda = " + sci(cr.deltaLambda) + ", delta_w = " + sci(cr.deltaW) : cr.message);
    cert.success = cr.success;
  } else {
    skip("cift");
  }
  return cert;
}

RecheckReport recheckCertificate(const ValidationCertificate& c, const std::optional<FieldPair<double>>& wStar,
                                 bool full) {
  RecheckReport rep;
  auto item = [&](const std::string& name, bool ok, const std::string& detail) {
    rep.items.push_back({name, ok, detail});
  };
  const auto& r = c.report;
  const auto& b = c.lipschitz;

  bool paramsOk = true;
  try {
    c.params.check();
  } catch (const std::exception& e) {
    paramsOk = false;
    item("params", false, e.what());
  }
  if (paramsOk) item("params", true, "");

  item("success flag", c.success, "");
  item("tau < 1", r.tau < 1.0, "tau = " + sci(r.tau));
  const double ab = sqrt(sqr(Interval(r.A)) + sqr(Interval(r.B))).hi();
  item("sqrt(A^2+B^2) <= tau", ab <= r.tau, sci(ab) + " vs " + sci(r.tau));
  item("C_T >= 1/min beta", r.CT >= 1.0, "C_T = " + sci(r.CT));
  const double kNeed = r.tau < 1.0 ? divUp(std::fmax(r.KN, r.CT), subDown(1.0, r.tau)) : INFINITY;
  item("K >= max(K_N, C_T)/(1 - tau)", r.K >= kNeed, sci(r.K) + " vs " + sci(kNeed));

  bool lOk = b.L[3] == 0.0;
  for (double l : b.L) lOk = lOk && l >= 0 && std::isfinite(l);
  item("L4 = 0 and L >= 0", lOk, "");
  if (paramsOk) {
    const SobolevConstants sc = sobolevConstants(c.params.dim);
    const Interval pi2 = sqr(Interval::pi());
    const Interval lamBar = Interval(std::fabs(c.params.lambda)) + Interval(b.ellLambda);
    const double l1 = (Interval(2.0) * Interval::sqrt2() * Interval(sc.CmBar) * lamBar * Interval(b.f2Max) / pi2).hi();
    const double l2 = (Interval(2.0) * Interval(b.f1Star) / pi2 + Interval(c.params.sigma) / sqr(pi2)).hi();
    item("L1 from f2_max", b.L[0] >= l1, sci(b.L[0]) + " vs " + sci(l1));
    item("L2 from f1_star", b.L[1] >= l2, sci(b.L[1]) + " vs " + sci(l2));
    item("ell_lambda <= |lambda|", b.ellLambda >= 0 && b.ellLambda <= std::fabs(c.params.lambda), "");
  }

  const Interval k(r.K);
  const double t1 = (Interval(4.0) * sqr(k) * Interval(c.rho) * Interval(b.L[0])).hi();
  item("4K^2 rho L1 < 1", t1 < 1.0, sci(t1));
  const double t2 = (Interval(2.0) * k * Interval(c.rho)).hi();
  item("2K rho < ell_w", t2 < b.ellW, sci(t2) + " vs " + sci(b.ellW));
  const Thm2 t = thm2(r.K, c.rho, b.L, c.deltaLambda, c.deltaW);
  item("2K L1 dw + 2K L2 dl <= 1", t.first <= 1.0, sci(t.first));
  item("2K rho + 2K L3 dl + 2K L4 dl^2 <= dw", t.second <= c.deltaW, sci(t.second) + " vs " + sci(c.deltaW));
  item("0 <= delta_lambda <= ell_lambda", c.deltaLambda >= 0 && c.deltaLambda <= b.ellLambda, sci(c.deltaLambda));
  item("0 < delta_w <= ell_w", c.deltaW > 0 && c.deltaW <= b.ellW, sci(c.deltaW));

  if (wStar && paramsOk) {
    try {
      const double rho = residualBound(c.params, *wStar).hi();
      item("rho >= recomputed", c.rho >= rho, sci(c.rho) + " vs " + sci(rho));
      const LipschitzBundle lb = lipschitzConstants(c.params, *wStar, b.ellW, b.ellLambda);
      bool ok = true;
      for (int i = 0; i < 4; ++i) ok = ok && b.L[static_cast<std::size_t>(i)] >= lb.L[static_cast<std::size_t>(i)];
      item("L >= recomputed", ok, "");
      item("f bounds >= recomputed", b.f1Max >= lb.f1Max && b.f2Max >= lb.f2Max && b.f1Star >= lb.f1Star, "");
      const LinearOperatorSpec spec = buildLinearizationSpec(c.params, *wStar, r.N);
      const TailConstants tc = tailConstants(spec, r.KN);
      item("B >= recomputed", r.B >= tc.B.hi(), sci(r.B) + " vs " + sci(tc.B.hi()));
      item("A >= recomputed from K_N", r.A >= tc.A.hi(), sci(r.A) + " vs " + sci(tc.A.hi()));
      item("N matches certificate", r.N == c.N, "");
      if (full) {
        const InverseNormCertificate kn = computeKN(spec);
        item("K_N >= recomputed", kn.success && r.KN >= kn.bound,
             kn.success ? sci(r.KN) + " vs " + sci(kn.bound) : kn.message);
      }
    } catch (const std::exception& e) {
      item("solution", false, e.what());
    }
  }

  rep.passed = true;
  for (const auto& i : rep.items) rep.passed = rep.passed && i.ok;
  return rep;
}

}  // namespace tbcp
