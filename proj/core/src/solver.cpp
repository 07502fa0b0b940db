#include "tbcp/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace tbcp {

int defaultSolverCutoff(int dim) { return dim == 1 ? 96 : 24; }

GalerkinLayout::GalerkinLayout(int dim, int nsol) : dim_(dim), nsol_(nsol) {
  if (nsol < 2) throw std::invalid_argument("solver cutoff must be at least 2");
  for (const MultiIndex& k : multiIndicesBelow(dim, nsol)) {
    if (!k.isZero()) modes_.push_back(k);
  }
}

Eigen::VectorXd GalerkinLayout::pack(const FieldPair<double>& w) const {
  const auto m = static_cast<Eigen::Index>(modes_.size());
  Eigen::VectorXd x(2 * m);
  for (int i = 0; i < 2; ++i) {
    if (w[i].dim() != dim_) throw std::invalid_argument("field dimension does not match layout");
    for (Eigen::Index a = 0; a < m; ++a) x(i * m + a) = w[i].coefficient(modes_[static_cast<std::size_t>(a)]);
  }
  return x;
}

FieldPair<double> GalerkinLayout::unpack(const Eigen::VectorXd& x) const {
  const auto m = static_cast<Eigen::Index>(modes_.size());
  FieldPair<double> w{CosineField(dim_, nsol_), CosineField(dim_, nsol_)};
  for (int i = 0; i < 2; ++i) {
    for (Eigen::Index a = 0; a < m; ++a) w[i][modes_[static_cast<std::size_t>(a)]] = x(i * m + a);
  }
  return w;
}

namespace {

FieldPair<double> fitted(const FieldPair<double>& w, int nsol) {
  return {projectPN(w[0], nsol).resized(nsol), projectPN(w[1], nsol).resized(nsol)};
}

}  // namespace

Eigen::VectorXd galerkinResidual(const ModelParams& params, const FieldPair<double>& w, int nsol) {
  const GalerkinLayout layout(params.dim, nsol);
  const FieldPair<double> wn = fitted(w, nsol);
  const FieldPair<double> f = fFieldComposition(wn, params.mass);
  const auto m = static_cast<Eigen::Index>(layout.modes().size());
  Eigen::VectorXd r(2 * m);
  const double lam = params.lambda;
  for (int i = 0; i < 2; ++i) {
    for (Eigen::Index a = 0; a < m; ++a) {
      const MultiIndex& k = layout.modes()[static_cast<std::size_t>(a)];
      const double kap = kappaAs<double>(k);
      const double wk = wn[i][k];
      r(i * m + a) = -kap * kap * wk + lam * kap * f[i].coefficient(k) - lam * params.sigma * wk;
    }
  }
  return r;
}

namespace {

// Jacobian block on the layout modes for precomputed Df(μ+w) fields.
Eigen::MatrixXd jacobianFromDf(const ModelParams& params, const std::array<FieldPair<double>, 2>& df,
                               const GalerkinLayout& layout) {
  const auto m = static_cast<Eigen::Index>(layout.modes().size());
  const auto& modes = layout.modes();
  const double lam = params.lambda;
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(2 * m, 2 * m);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const CosineField& c = df[i][j];
      for (Eigen::Index b = 0; b < m; ++b) {
        for (Eigen::Index a = 0; a < m; ++a) {
          const MultiIndex& k = modes[static_cast<std::size_t>(a)];
          const double e = multiplicationEntry(c, modes[static_cast<std::size_t>(b)], k);
          if (e != 0.0) jac(i * m + a, j * m + b) = lam * kappaAs<double>(k) * e;
        }
      }
    }
  }
  for (int i = 0; i < 2; ++i) {
    for (Eigen::Index a = 0; a < m; ++a) {
      const double kap = kappaAs<double>(modes[static_cast<std::size_t>(a)]);
      jac(i * m + a, i * m + a) -= kap * kap + lam * params.sigma;
    }
  }
  return jac;
}

}  // namespace

Eigen::MatrixXd galerkinJacobian(const ModelParams& params, const FieldPair<double>& w, int nsol) {
  const GalerkinLayout layout(params.dim, nsol);
  return jacobianFromDf(params, dfFieldComposition(fitted(w, nsol), params.mass), layout);
}

double residualNormY(const GalerkinLayout& layout, const Eigen::VectorXd& r) {
  const auto m = static_cast<Eigen::Index>(layout.modes().size());
  double s = 0.0;
  for (int i = 0; i < 2; ++i) {
    for (Eigen::Index a = 0; a < m; ++a) {
      const double v = r(i * m + a) / kappaAs<double>(layout.modes()[static_cast<std::size_t>(a)]);
      s += v * v;
    }
  }
  return std::sqrt(s);
}

int morseIndex(const ModelParams& params, const FieldPair<double>& w, int nsol) {
  const auto df = dfFieldComposition(fitted(w, nsol), params.mass);
  // Modes with π²|k|²_∞ well above λ·‖Df‖ are dominated by -κ² and cannot
  // contribute unstable directions; the eigenproblem is solved on the rest.
  double dfMax = 0.0;
  for (const auto& row : df) {
    for (const auto& c : row) {
      double s = 0.0;
      for (std::size_t f = 0; f < c.size(); ++f) s += std::fabs(c.coeffs()[f]) * sqrt2Power<double>(c.multiIndex(f).nonzeroCount());
      dfMax = std::max(dfMax, s);
    }
  }
  const double pi = std::numbers::pi;
  const int cut = static_cast<int>(std::ceil(2.0 * std::sqrt(std::fabs(params.lambda) * 2.0 * dfMax) / pi)) + 4;
  const GalerkinLayout layout(params.dim, std::clamp(cut, 2, nsol));
  const Eigen::MatrixXd jac = jacobianFromDf(params, df, layout);
  Eigen::EigenSolver<Eigen::MatrixXd> es(jac, false);
  if (es.info() != Eigen::Success) return -1;
  int n = 0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) n += es.eigenvalues()(i).real() > 0;
  return n;
}

const char* toString(NewtonStatus s) {
  switch (s) {
    case NewtonStatus::Converged: return "converged";
    case NewtonStatus::MaxIterations: return "maximum iterations exceeded";
    case NewtonStatus::SingularJacobian: return "singular Jacobian";
    case NewtonStatus::Diverged: return "diverged";
  }
  return "?";
}

NewtonResult newtonSolve(const ModelParams& params, const FieldPair<double>& initial, int nsol,
                         const NewtonSettings& settings) {
  if (!(settings.tol > 0)) throw std::invalid_argument("Newton tolerance must be positive");
  params.check();
  const GalerkinLayout layout(params.dim, nsol);
  NewtonResult out;
  Eigen::VectorXd x = layout.pack(fitted(initial, nsol));
  Eigen::VectorXd r = galerkinResidual(params, layout.unpack(x), nsol);
  double res = residualNormY(layout, r);
  const double res0 = std::max(res, 1.0);

  auto finish = [&](NewtonStatus st, std::string msg) {
    out.status = st;
    out.message = std::move(msg);
    out.solution.params = params;
    out.solution.w = layout.unpack(x);
    out.solution.nsol = nsol;
    out.solution.residualNorm = res;
    if (st == NewtonStatus::Converged && settings.computeIndex) {
      out.solution.morseIndex = morseIndex(params, out.solution.w, nsol);
    }
    return out;
  };

  for (int it = 0; it <= settings.maxIter; ++it) {
    out.iterations = it;
    if (res <= settings.tol) return finish(NewtonStatus::Converged, "");
    if (it == settings.maxIter) break;
    const Eigen::MatrixXd jac = galerkinJacobian(params, layout.unpack(x), nsol);
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(jac);
    if (!(lu.rcond() > 1e-15)) return finish(NewtonStatus::SingularJacobian, "Jacobian is numerically singular");
    const Eigen::VectorXd dx = lu.solve(r);
    if (!dx.allFinite()) return finish(NewtonStatus::SingularJacobian, "Newton step is not finite");
    // Plain Newton step with a short backtracking safeguard.
    double t = 1.0;
    Eigen::VectorXd xn;
    Eigen::VectorXd rn;
    double resn = 0.0;
    for (int bt = 0; bt < 6; ++bt) {
      xn = x - t * dx;
      rn = galerkinResidual(params, layout.unpack(xn), nsol);
      resn = residualNormY(layout, rn);
      if (std::isfinite(resn) && resn < res) break;
      t *= 0.5;
    }
    if (!std::isfinite(resn) || resn > 1e8 * res0) {
      return finish(NewtonStatus::Diverged, "residual blew up");
    }
    const bool stalled = !(resn < res);
    x = std::move(xn);
    r = std::move(rn);
    res = resn;
    if (stalled && dx.norm() <= 1e-13 * std::max(1.0, x.norm()) && res <= 100 * settings.tol) {
      return finish(NewtonStatus::Converged, "converged at rounding level");
    }
  }
  return finish(NewtonStatus::MaxIterations, "residual " + std::to_string(res));
}

FieldPair<double> seedFromKernel(const ModelParams& params, int j, const MultiIndex& k, double amplitude,
                                 int nsol) {
  if (k.isZero()) throw std::domain_error("seedFromKernel: k must be nonzero");
  if (k.dim() != params.dim) throw std::invalid_argument("seedFromKernel: multi-index dimension mismatch");
  if (k.infNorm() >= nsol) throw std::invalid_argument("seedFromKernel: mode outside solver cutoff");
  if (j != 1 && j != 2) throw std::domain_error("seedFromKernel: j must be 1 or 2");
  const HomogeneousSpectrum s = homogeneousSpectrum(params.mass);
  const auto& p = j == 1 ? s.p1 : s.p2;
  FieldPair<double> w{CosineField(params.dim, nsol), CosineField(params.dim, nsol)};
  w[0][k] = amplitude * p[0];
  w[1][k] = amplitude * p[1];
  return w;
}

double bifurcationLambda(const ModelParams& params, int j, const MultiIndex& k) {
  const HomogeneousSpectrum s = homogeneousSpectrum(params.mass);
  const double nu = j == 1 ? s.nu1 : s.nu2;
  const double kap = kappaAs<double>(k);
  const double den = kap * nu - params.sigma;
  return den > 0 ? kap * kap / den : -1.0;
}

FieldPair<double> reflect(const FieldPair<double>& w, int axis) {
  FieldPair<double> r = w;
  for (auto& f : r) {
    if (axis < 0 || axis >= f.dim()) throw std::invalid_argument("reflect: axis out of range");
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (f.multiIndex(i)[axis] % 2 != 0) f.coeffs()[i] = -f.coeffs()[i];
    }
  }
  return r;
}

double solutionNorm(const FieldPair<double>& w) {
  double s = 0.0;
  for (const auto& f : w) {
    for (double c : f.coeffs()) s += c * c;
  }
  return std::sqrt(s);
}

Interval xDistance(const FieldPair<double>& a, const FieldPair<double>& b) {
  Interval s(0.0);
  for (int i = 0; i < 2; ++i) {
    IntervalField d = toInterval(a[i]);
    d -= toInterval(b[i]);
    d.coeffs()[0] = Interval(0.0);
    s += sqr(hBarNorm(d, 2));
  }
  return sqrt(s);
}

Branch continueBranch(const CandidateEquilibrium& start, double lambdaEnd, const StepPolicy& policy,
                      const NewtonSettings& settings) {
  if (!(policy.initialStep > 0) || !(policy.minStep > 0)) {
    throw std::invalid_argument("continuation steps must be positive");
  }
  Branch b;
  CandidateEquilibrium cur = start;
  if (cur.morseIndex < 0 && settings.computeIndex) cur.morseIndex = morseIndex(cur.params, cur.w, cur.nsol);
  b.points.push_back({cur.params.lambda, solutionNorm(cur.w), cur.morseIndex});
  b.solutions.push_back(cur);
  const double dir = lambdaEnd >= cur.params.lambda ? 1.0 : -1.0;
  double h = policy.initialStep;
  while (dir * (lambdaEnd - cur.params.lambda) > 0) {
    double next = cur.params.lambda + dir * h;
    if (dir * (next - lambdaEnd) > 0) next = lambdaEnd;
    ModelParams p = cur.params;
    p.lambda = next;
    if (!(p.lambda > 0)) {
      b.termination = "lambda left the positive axis";
      return b;
    }
    const NewtonResult nr = newtonSolve(p, cur.w, cur.nsol, settings);
    bool jumped = false;
    if (nr.converged()) {
      FieldPair<double> diff = nr.solution.w;
      for (int i = 0; i < 2; ++i) diff[i].accumulate(cur.w[i], -1.0);
      jumped = solutionNorm(diff) > policy.maxRelativeChange * std::max(solutionNorm(cur.w), 1e-3);
    }
    if (!nr.converged() || jumped) {
      h *= 0.5;
      if (h < policy.minStep) {
        b.termination = std::string("step underflow at lambda ") + std::to_string(cur.params.lambda) + " (" +
                        (jumped ? "branch jump" : toString(nr.status)) + ")";
        return b;
      }
      continue;
    }
    const CandidateEquilibrium& sol = nr.solution;
    if (sol.morseIndex != cur.morseIndex && sol.morseIndex >= 0 && cur.morseIndex >= 0) {
      b.indexChanges.push_back({cur.params.lambda, sol.params.lambda, cur.morseIndex, sol.morseIndex, b.points.size()});
    }
    cur = sol;
    b.points.push_back({cur.params.lambda, solutionNorm(cur.w), cur.morseIndex});
    b.solutions.push_back(cur);
    h = std::min(h * policy.growth, policy.maxStep);
  }
  b.reachedEnd = true;
  b.termination = "reached end of parameter range";
  return b;
}

FieldPair<double> approximateKernel(const ModelParams& params, const FieldPair<double>& w, int nsol) {
  const GalerkinLayout layout(params.dim, nsol);
  const Eigen::MatrixXd jac = galerkinJacobian(params, w, nsol);
  Eigen::EigenSolver<Eigen::MatrixXd> es(jac, true);
  if (es.info() != Eigen::Success) throw std::runtime_error("approximateKernel: eigensolver failed");
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < es.eigenvalues().size(); ++i) {
    if (std::abs(es.eigenvalues()(i)) < std::abs(es.eigenvalues()(best))) best = i;
  }
  Eigen::VectorXd v = es.eigenvectors().col(best).real();
  const double n = v.norm();
  if (n > 0) v /= n;
  return layout.unpack(v);
}

NewtonResult switchBranch(const CandidateEquilibrium& base, const FieldPair<double>& kernel, double amplitude,
                          const NewtonSettings& settings) {
  FieldPair<double> seed = base.w;
  for (int i = 0; i < 2; ++i) seed[i].accumulate(kernel[i], amplitude);
  return newtonSolve(base.params, seed, base.nsol, settings);
}

NewtonResult solveFromKernel(const ModelParams& params, const KernelSeed& seed, int nsol,
                             const NewtonSettings& settings, const StepPolicy& policy) {
  params.check();
  const double lc = bifurcationLambda(params, seed.j, seed.k);
  if (!(lc > 0) || params.lambda <= 1.01 * lc || seed.amplitude == 0.0) {
    return newtonSolve(params, seedFromKernel(params, seed.j, seed.k, seed.amplitude, nsol), nsol, settings);
  }
  ModelParams start = params;
  start.lambda = 1.01 * lc;
  NewtonResult nr;
  double amp = seed.amplitude;
  for (int attempt = 0; attempt < 4; ++attempt, amp *= 2.0) {
    nr = newtonSolve(start, seedFromKernel(start, seed.j, seed.k, amp, nsol), nsol, settings);
    if (nr.converged() && solutionNorm(nr.solution.w) > 1e-8) break;
  }
  if (!nr.converged()) return nr;
  const Branch b = continueBranch(nr.solution, params.lambda, policy, settings);
  if (!b.reachedEnd) {
    NewtonResult fail;
    fail.status = NewtonStatus::MaxIterations;
    fail.solution = b.solutions.back();
    fail.message = "continuation to the target stopped: " + b.termination;
    return fail;
  }
  NewtonResult out;
  out.status = NewtonStatus::Converged;
  out.solution = b.solutions.back();
  out.iterations = static_cast<int>(b.points.size());
  return out;
}

}  // namespace tbcp
