#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "tbcp/validate.hpp"

using namespace tbcp;

namespace {

ModelParams params1d(double lambda) {
  ModelParams p;
  p.dim = 1;
  p.sigma = 6.0;
  p.lambda = lambda;
  p.mass = MassVector::fromTriple(0.5, 0.4, 0.1);
  return p;
}

const CandidateEquilibrium& smallSolution() {
  static const CandidateEquilibrium s = [] {
    const double lc = bifurcationLambda(params1d(1.0), 1, MultiIndex{1});
    const NewtonResult r = solveFromKernel(params1d(1.2 * lc), KernelSeed{1, MultiIndex{1}, 0.05}, 32);
    REQUIRE(r.converged());
    return r.solution;
  }();
  return s;
}

}  // namespace

TEST_CASE("residual of the homogeneous state is exactly zero") {
  const FieldPair<double> w{CosineField(1, 4), CosineField(1, 4)};
  const Interval r = residualBound(params1d(50.0), w);
  CHECK(r.lo() == 0.0);
  CHECK(r.hi() == 0.0);
}

TEST_CASE("residual of a two-mode field against quadrature") {
  const ModelParams p = params1d(40.0);
  FieldPair<double> w{CosineField(1, 3), CosineField(1, 3)};
  w[0][MultiIndex{1}] = 0.07;
  w[1][MultiIndex{2}] = -0.04;
  double sum = 0.0;
  for (int k = 1; k < 12; ++k) {
    const double kap = M_PI * M_PI * k * k;
    for (int i = 0; i < 2; ++i) {
      const double fk = oracle::project(
          [&](const std::vector<double>& x) {
            return fEval(p.mass.mu1 + oracle::fieldValue(w[0], x), p.mass.mu2 + oracle::fieldValue(w[1], x))[i];
          },
          MultiIndex{k}, 64);
      const double wk = w[i].coefficient(MultiIndex{k});
      const double r = -kap * kap * wk + p.lambda * kap * fk - p.lambda * p.sigma * wk;
      sum += r * r / (kap * kap);
    }
  }
  const Interval rho = residualBound(p, w);
  CHECK(rho.mid() == doctest::Approx(std::sqrt(sum)).epsilon(1e-10));
  CHECK(rho.lo() <= rho.hi());
}

TEST_CASE("Lipschitz bundle") {
  const CandidateEquilibrium& s = smallSolution();
  const LipschitzBundle b = lipschitzConstants(s.params, s.w, 0.1, 0.01 * s.params.lambda);
  CHECK(b.L[3] == 0.0);
  for (double l : b.L) CHECK(l >= 0.0);
  // f-bounds dominate sampled derivative values on the region.
  const double r = iNormUpperBound(s.w) + sobolevConstants(1).CmBar * 0.1;
  for (int a = -4; a <= 4; ++a) {
    for (int c = -4; c <= 4; ++c) {
      const double z1 = s.params.mass.mu1 + r * a / 4.0, z2 = s.params.mass.mu2 + r * c / 4.0;
      const auto j = dfJacobian(z1, z2);
      const auto t = d2fTensor(z1, z2);
      for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k) {
          CHECK(std::fabs(j[i][k]) <= b.f1Max);
          for (int l = 0; l < 2; ++l) CHECK(std::fabs(t[i][k][l]) <= b.f2Max);
        }
    }
  }
  // ‖w‖_I bounds the sampled sup.
  const auto g0 = evaluateOnGrid(s.w[0], 200), g1 = evaluateOnGrid(s.w[1], 200);
  for (std::size_t i = 0; i < g0.size(); ++i) CHECK(std::hypot(g0[i], g1[i]) <= iNormUpperBound(s.w));
}

TEST_CASE("radii in closed form when only L1 is present") {
  LipschitzBundle b;
  b.L = {2.0, 0.0, 0.0, 0.0};
  b.ellW = 0.1;
  b.ellLambda = 0.5;
  const CiftRadii c = ciftRadii(10.0, 1e-4, b);
  REQUIRE(c.success);
  CHECK(c.deltaLambda == 0.5);
  CHECK(c.deltaW >= 2e-3);
  CHECK(c.deltaW == doctest::Approx(2e-3).epsilon(1e-12));
}

TEST_CASE("first hypothesis violated") {
  LipschitzBundle b;
  b.L = {2.0, 0.0, 0.0, 0.0};
  b.ellW = 0.1;
  b.ellLambda = 0.5;
  // 4 K² ρ L1 = 4·1·0.25·2 = 2
  const CiftRadii c = ciftRadii(1.0, 0.25, b);
  CHECK_FALSE(c.success);
  CHECK(c.message.find("4K^2 rho L1") != std::string::npos);
}

TEST_CASE("homogeneous state below the first crossing") {
  const ModelParams p = params1d(0.5 * bifurcationLambda(params1d(1.0), 1, MultiIndex{1}));
  const FieldPair<double> w{CosineField(1, 2), CosineField(1, 2)};
  const ValidationCertificate c = validateEquilibrium(p, w);
  CHECK(c.success);
  CHECK(c.rho == 0.0);
  CHECK(c.deltaW > 0.0);
  CHECK(recheckCertificate(c, w).passed);
}

TEST_CASE("certificate recheck and tampering") {
  const CandidateEquilibrium& s = smallSolution();
  const ValidationCertificate c = validateEquilibrium(s.params, s.w);
  REQUIRE(c.success);
  CHECK(c.stages.size() == 4);
  CHECK(recheckCertificate(c, s.w).passed);
  CHECK(recheckCertificate(c).passed);
  CHECK(recheckCertificate(c, s.w, true).passed);

  auto flips = [&](auto mutate) {
    ValidationCertificate t = c;
    mutate(t);
    return !recheckCertificate(t, s.w).passed;
  };
  CHECK(flips([](ValidationCertificate& t) { t.report.K *= 0.9; }));
  CHECK(flips([](ValidationCertificate& t) { t.rho *= 0.9; }));
  CHECK(flips([](ValidationCertificate& t) { t.report.tau *= 0.9; }));
  CHECK(flips([](ValidationCertificate& t) { t.deltaLambda *= 1.1; }));
  CHECK(flips([](ValidationCertificate& t) { t.deltaW *= 0.9; }));
  CHECK(flips([](ValidationCertificate& t) { t.lipschitz.L[0] *= 0.9; }));
  CHECK(flips([](ValidationCertificate& t) { t.success = false; }));
}

TEST_CASE("validation reports failing stages") {
  const CandidateEquilibrium& s = smallSolution();
  ValidationSettings vs;
  vs.N = 3;
  const ValidationCertificate c = validateEquilibrium(s.params, s.w, vs);
  CHECK_FALSE(c.success);
  bool failed = false;
  for (const auto& st : c.stages) failed = failed || st.status == "failed";
  CHECK(failed);
  CHECK_FALSE(recheckCertificate(c, s.w).passed);
}
