#include "tbcp/normbound.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "tbcp/parallel.hpp"

namespace tbcp {

using namespace rounding;

bool IndexSet::contains(const MultiIndex& k) const {
  for (int a = 0; a < k.dim(); ++a) {
    const int s = stride[static_cast<std::size_t>(a)];
    if (s <= 1) continue;
    if (k[a] % s != offset[static_cast<std::size_t>(a)] % s) return false;
  }
  return true;
}

LinearOperatorSpec LinearOperatorSpec::zeros(int dim, int m, int n, int N) {
  LinearOperatorSpec s;
  s.dim = dim;
  s.m = m;
  s.n = n;
  s.N = N;
  s.alpha.assign(static_cast<std::size_t>(m), std::vector<Interval>(static_cast<std::size_t>(m), Interval(0.0)));
  s.beta.assign(static_cast<std::size_t>(n), Interval(1.0));
  s.gamma.assign(static_cast<std::size_t>(n), std::vector<Interval>(static_cast<std::size_t>(n), Interval(0.0)));
  s.aFields.assign(static_cast<std::size_t>(m), std::vector<IntervalField>(static_cast<std::size_t>(n)));
  s.bFields.assign(static_cast<std::size_t>(n), std::vector<IntervalField>(static_cast<std::size_t>(m)));
  s.cFields.assign(static_cast<std::size_t>(n), std::vector<IntervalField>(static_cast<std::size_t>(n)));
  s.indexSets.assign(static_cast<std::size_t>(n), IndexSet{});
  return s;
}

void LinearOperatorSpec::check() const {
  auto fail = [](const std::string& what) { throw std::invalid_argument("LinearOperatorSpec: " + what); };
  if (dim < 1 || dim > 3) fail("dimension must be 1, 2 or 3");
  if (m < 0 || n < 1) fail("need m >= 0 and n >= 1");
  if (N < 2) fail("cutoff N must be at least 2");
  const auto um = static_cast<std::size_t>(m), un = static_cast<std::size_t>(n);
  if (alpha.size() != um) fail("alpha must be m x m");
  for (const auto& row : alpha) {
    if (row.size() != um) fail("alpha must be m x m");
  }
  if (beta.size() != un) fail("beta must have n entries");
  for (const auto& b : beta) {
    if (!(b.lo() > 0)) fail("every beta must be positive");
  }
  if (gamma.size() != un) fail("gamma must be n x n");
  for (const auto& row : gamma) {
    if (row.size() != un) fail("gamma must be n x n");
  }
  if (aFields.size() != um) fail("aFields must be m x n");
  for (const auto& row : aFields) {
    if (row.size() != un) fail("aFields must be m x n");
    for (const auto& a : row) {
      if (a.dim() == 0) continue;
      if (a.dim() != dim) fail("aField dimension mismatch");
      if (!a.isZeroMean()) fail("aFields must be zero-mean");
      for (std::size_t f = 0; f < a.size(); ++f) {
        if (a.multiIndex(f).infNorm() >= N && !Scalar<Interval>::isZero(a.coeffs()[f])) {
          fail("aFields must vanish for |k|_inf >= N");
        }
      }
    }
  }
  if (bFields.size() != un) fail("bFields must be n x m");
  for (const auto& row : bFields) {
    if (row.size() != um) fail("bFields must be n x m");
    for (const auto& b : row) {
      if (b.dim() == 0) continue;
      if (b.dim() != dim) fail("bField dimension mismatch");
      if (!b.isZeroMean()) fail("bFields must be zero-mean");
    }
  }
  if (cFields.size() != un) fail("cFields must be n x n");
  for (const auto& row : cFields) {
    if (row.size() != un) fail("cFields must be n x n");
    for (const auto& c : row) {
      if (c.dim() != 0 && c.dim() != dim) fail("cField dimension mismatch");
    }
  }
  if (indexSets.size() != un) fail("indexSets must have n entries");
}

std::vector<MultiIndex> LinearOperatorSpec::modes(int i) const {
  std::vector<MultiIndex> out;
  const IndexSet& set = indexSets.at(static_cast<std::size_t>(i));
  for (const MultiIndex& k : multiIndicesBelow(dim, N)) {
    if (!k.isZero() && set.contains(k)) out.push_back(k);
  }
  return out;
}

std::size_t LinearOperatorSpec::matrixSize() const {
  std::size_t s = static_cast<std::size_t>(m);
  for (int i = 0; i < n; ++i) s += modes(i).size();
  return s;
}

// ---------------------------------------------------------------------------

OperatorVector applyL(const LinearOperatorSpec& spec, const OperatorVector& x) {
  spec.check();
  if (x.scalars.size() != static_cast<std::size_t>(spec.m) || x.fields.size() != static_cast<std::size_t>(spec.n)) {
    throw std::invalid_argument("applyL: argument sizes do not match the spec");
  }
  OperatorVector y;
  y.scalars.assign(static_cast<std::size_t>(spec.m), 0.0);
  for (int k = 0; k < spec.m; ++k) {
    double s = 0.0;
    for (int i = 0; i < spec.m; ++i) s += spec.alpha[k][i].mid() * x.scalars[i];
    for (int j = 0; j < spec.n; ++j) {
      const IntervalField& a = spec.aFields[k][j];
      if (a.dim() == 0) continue;
      const CosineField& v = x.fields[j];
      for (std::size_t f = 1; f < a.size(); ++f) {
        const MultiIndex idx = a.multiIndex(f);
        const double kap = kappaAs<double>(idx);
        s += kap * kap * a.coeffs()[f].mid() * v.coefficient(idx);
      }
    }
    y.scalars[k] = s;
  }
  for (int k = 0; k < spec.n; ++k) {
    const CosineField& vk = x.fields[k];
    if (!vk.isZeroMean()) throw std::invalid_argument("applyL: function arguments must be zero-mean");
    // -β Δ² v_k
    CosineField out = laplacianApply(laplacianApply(vk));
    out *= -spec.beta[k].mid();
    for (int i = 0; i < spec.m; ++i) {
      const IntervalField& b = spec.bFields[k][i];
      if (b.dim() != 0) out.accumulate(midpoint(b), -x.scalars[i]);
    }
    CosineField cv;
    for (int j = 0; j < spec.n; ++j) {
      const IntervalField& c = spec.cFields[k][j];
      if (c.dim() != 0) cv.accumulate(product(midpoint(c), x.fields[j]), 1.0);
      out.accumulate(x.fields[j], -spec.gamma[k][j].mid());
    }
    if (cv.dim() != 0) out.accumulate(laplacianApply(cv), -1.0);
    y.fields.push_back(std::move(out));
  }
  return y;
}

namespace {

IntervalMatrix assemble(const LinearOperatorSpec& spec, bool scaled) {
  spec.check();
  const int m = spec.m, n = spec.n;
  std::vector<std::vector<MultiIndex>> modes(static_cast<std::size_t>(n));
  std::vector<std::size_t> offset(static_cast<std::size_t>(n) + 1);
  offset[0] = static_cast<std::size_t>(m);
  for (int i = 0; i < n; ++i) {
    modes[i] = spec.modes(i);
    offset[i + 1] = offset[i] + modes[i].size();
  }
  const std::size_t size = offset[static_cast<std::size_t>(n)];
  IntervalMatrix b(size, size);

  // κ, 1/κ, 1/κ² per mode of each slot
  struct ModeData {
    Interval kap, invKap, invKap2;
  };
  std::vector<std::vector<ModeData>> md(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    for (const MultiIndex& k : modes[i]) {
      const Interval kap = kappa(k);
      const Interval inv = Interval(1.0) / kap;
      md[i].push_back({kap, inv, sqr(inv)});
    }
  }

  for (int k = 0; k < m; ++k) {
    for (int l = 0; l < m; ++l) b(k, l) = spec.alpha[k][l];
    for (int j = 0; j < n; ++j) {
      const IntervalField& a = spec.aFields[k][j];
      if (a.dim() == 0) continue;
      for (std::size_t q = 0; q < modes[j].size(); ++q) {
        const Interval ak = a.coefficient(modes[j][q]);
        const Interval& kap = md[j][q].kap;
        // (a, φ_l)_{H̄²} = κ_l² a_l
        b(k, offset[j] + q) = scaled ? kap * ak : sqr(kap) * ak;
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int l = 0; l < m; ++l) {
      const IntervalField& bf = spec.bFields[i][l];
      if (bf.dim() == 0) continue;
      for (std::size_t p = 0; p < modes[i].size(); ++p) {
        const Interval v = -bf.coefficient(modes[i][p]);
        b(offset[i] + p, l) = scaled ? v * md[i][p].invKap : v;
      }
    }
  }

  // Function blocks, parallel over rows of each block row.
  for (int i = 0; i < n; ++i) {
    parallelFor(0, modes[i].size(), [&](std::size_t p) {
      const MultiIndex& k = modes[i][p];
      const ModeData& dk = md[i][p];
      for (int j = 0; j < n; ++j) {
        const IntervalField& c = spec.cFields[i][j];
        for (std::size_t q = 0; q < modes[j].size(); ++q) {
          const MultiIndex& l = modes[j][q];
          const ModeData& dl = md[j][q];
          Interval e(0.0);
          if (c.dim() != 0) {
            const Interval t = multiplicationEntry(c, l, k);
            if (!Scalar<Interval>::isZero(t)) e = scaled ? t * dl.invKap : dk.kap * t;
          }
          if (k == l) {
            const Interval& g = spec.gamma[i][j];
            if (scaled) {
              if (i == j) e -= spec.beta[i];
              if (!Scalar<Interval>::isZero(g)) e -= g * dk.invKap2;
            } else {
              if (i == j) e -= spec.beta[i] * sqr(dk.kap);
              e -= g;
            }
          }
          b(offset[i] + p, offset[j] + q) = e;
        }
      }
    });
  }
  return b;
}

}  // namespace

IntervalMatrix assembleB(const LinearOperatorSpec& spec) { return assemble(spec, false); }
IntervalMatrix assembleBTilde(const LinearOperatorSpec& spec) { return assemble(spec, true); }

InverseNormCertificate computeKN(const LinearOperatorSpec& spec) {
  return verifiedInverseNormBound(assembleBTilde(spec));
}

TailConstants tailConstants(const LinearOperatorSpec& spec, double kn) {
  spec.check();
  const SobolevConstants sc = sobolevConstants(spec.dim);
  const Interval pi2 = sqr(Interval::pi());
  const Interval nn = Interval(static_cast<double>(spec.N));
  const Interval scale = Interval(1.0) / (pi2 * sqr(nn));
  const Interval cbce = Interval(sc.Cb) * Interval(sc.Ce);

  Interval sumA(0.0), sumB(0.0);
  for (int k = 0; k < spec.n; ++k) {
    double maxSup = 0.0;
    double maxB = 0.0;
    for (int j = 0; j < spec.n; ++j) {
      const IntervalField& c = spec.cFields[k][j];
      Interval term = abs(spec.gamma[k][j]) / pi2;
      if (c.dim() != 0) {
        maxSup = std::fmax(maxSup, supNormUpperBound(c).hi());
        term = cbce * hNorm(c, 2) + term;
      }
      maxB = std::fmax(maxB, term.hi());
    }
    for (int i = 0; i < spec.m; ++i) {
      const IntervalField& b = spec.bFields[k][i];
      if (b.dim() != 0) maxB = std::fmax(maxB, hBarNorm(b, 0).hi());
    }
    sumA += sqr(Interval(maxSup));
    sumB += sqr(Interval(maxB));
  }
  const double ct = divUp(1.0, std::min_element(spec.beta.begin(), spec.beta.end(), [](auto& x, auto& y) {
                                  return x.lo() < y.lo();
                                })->lo());
  TailConstants t;
  t.A = Interval(kn) * sqrt(Interval(static_cast<double>(spec.n))) * scale * sqrt(sumA);
  t.bScale = Interval(ct) * sqrt(Interval(2.0 * std::max(spec.m, spec.n))) / pi2 * sqrt(sumB);
  t.B = t.bScale / sqr(nn);
  return t;
}

InverseBoundReport inverseBound(const LinearOperatorSpec& spec) {
  spec.check();
  InverseBoundReport r;
  r.N = spec.N;
  double minBeta = spec.beta.front().lo();
  for (const auto& b : spec.beta) minBeta = std::fmin(minBeta, b.lo());
  r.CT = divUp(1.0, minBeta);

  const InverseNormCertificate kn = computeKN(spec);
  r.residual = kn.residual;
  if (!kn.success) {
    r.message = "K_N unavailable: " + kn.message;
    return r;
  }
  r.KN = kn.bound;
  const TailConstants t = tailConstants(spec, r.KN);
  r.A = t.A.hi();
  r.B = t.B.hi();
  r.bScale = t.bScale.hi();
  r.tau = sqrt(sqr(Interval(r.A)) + sqr(Interval(r.B))).hi();
  if (!(r.tau < 1.0)) {
    r.message = "tau = sqrt(A^2 + B^2) >= 1 (A = " + std::to_string(r.A) + ", B = " + std::to_string(r.B) + ")";
    return r;
  }
  r.K = divUp(std::fmax(r.KN, r.CT), subDown(1.0, r.tau));
  r.success = true;
  return r;
}

int estimateN(double bConst, double tauTarget) {
  if (!(tauTarget > 0 && tauTarget < 1)) throw std::invalid_argument("estimateN: tauTarget must lie in (0,1)");
  if (!(bConst > 0)) return 1;
  const double target = bConst / tauTarget;
  long n = static_cast<long>(std::ceil(std::sqrt(target)));
  while (static_cast<double>(n) * static_cast<double>(n) < target) ++n;
  while (n > 1 && static_cast<double>(n - 1) * static_cast<double>(n - 1) >= target) --n;
  return static_cast<int>(std::max(1L, n));
}

}  // namespace tbcp
