#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "image.hpp"
#include "tbcp/io.hpp"

namespace tbcp::cli {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4e", v);
  return buf;
}

void logSolution(std::ostream& log, const CandidateEquilibrium& s) {
  log << "lambda = " << s.params.lambda << ", L2 norm = " << solutionNorm(s.w)
      << ", residual (Y) = " << sci(s.residualNorm) << ", morse index = " << s.morseIndex << "\n";
}

CandidateEquilibrium loadSeedSolution(const std::string& path) {
  try {
    return loadSolution(path);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("seed file: ") + e.what());
  }
}

// Newton from the seed file or the kernel seed at the configured λ.
NewtonResult initialSolve(const RunConfig& c, const ModelParams& p, int nsol, const NewtonSettings& ns,
                          const StepPolicy& sp) {
  if (c.seedFile) {
    const CandidateEquilibrium seed = loadSeedSolution(*c.seedFile);
    if (seed.params.dim != p.dim) throw ConfigError("seed file dimension does not match dim");
    return newtonSolve(p, seed.w, nsol, ns);
  }
  return solveFromKernel(p, kernelSeed(c, p.dim), nsol, ns, sp);
}

std::filesystem::path locateSolution(const std::string& name, const std::filesystem::path& certPath) {
  const std::filesystem::path p(name);
  if (p.is_absolute() || std::filesystem::exists(p)) return p;
  const std::filesystem::path alt = certPath.parent_path() / p;
  return std::filesystem::exists(alt) ? alt : p;
}

}  // namespace

CommandResult cmdStabilityMap(const RunConfig& c, std::ostream& log) {
  const int res = c.resolution.value_or(512);
  if (res < 2) throw ConfigError("resolution must be at least 2");
  const StabilityRaster raster = stabilityGrid(res);
  const std::string stem = c.output.value_or("stability_map");
  RunConfig named = c;
  named.output = stem + ".csv";
  const auto csvPath = outputPath(named, "");
  named.output = stem + ".ppm";
  const auto ppmPath = outputPath(named, "");

  std::ostringstream csv;
  csv << "mu1,mu2,nu1,nu2,class\n";
  for (const StabilityPoint& p : raster.points) {
    csv << num(p.mu1) << "," << num(p.mu2) << "," << num(p.cls.nu1) << "," << num(p.cls.nu2) << ","
        << toString(p.cls.tag) << "\n";
  }
  writeTextFile(csvPath, csv.str());
  writePpm(ppmPath, renderStabilityMap(raster));

  static const double kReference[5][3] = {
      {0.3, 0.2, 0.5}, {0.4, 0.2, 0.4}, {0.35, 0.33, 0.32}, {0.5, 0.4, 0.1}, {0.5, 0.5, 0.0}};
  for (const auto& m : kReference) {
    const StabilityClass cls = classifyStability(MassVector::fromTriple(m[0], m[1], m[2]));
    log << "mu = (" << m[0] << ", " << m[1] << ", " << m[2] << "): " << toString(cls.tag) << " (nu1 = " << cls.nu1
        << ", nu2 = " << cls.nu2 << ")\n";
  }
  log << "wrote " << csvPath.string() << " and " << ppmPath.string() << "\n";
  return {kSuccess, {csvPath, ppmPath}};
}

CommandResult cmdFindEquilibrium(const RunConfig& c, std::ostream& log) {
  const ModelParams p = modelParams(c);
  const int nsol = solverCutoff(c, p.dim);
  const NewtonSettings ns = newtonSettings(c);
  const NewtonResult nr = initialSolve(c, p, nsol, ns, StepPolicy{});
  if (!nr.converged()) {
    log << "no convergence: " << toString(nr.status) << (nr.message.empty() ? "" : " (" + nr.message + ")") << "\n";
    return {kNonConvergence, {}};
  }
  const auto path = outputPath(c, "solution.json");
  saveSolution(path, nr.solution);
  logSolution(log, nr.solution);
  if (!c.seedFile && kernelSeed(c, p.dim).amplitude != 0.0 && solutionNorm(nr.solution.w) < 1e-8) {
    log << "warning: Newton converged to the homogeneous state\n";
  }
  log << "wrote " << path.string() << "\n";
  return {kSuccess, {path}};
}

CommandResult cmdContinueBranch(const RunConfig& c, std::ostream& log) {
  RunConfig cc = c;
  if (!c.lambdaEnd) throw ConfigError("lambda_end is required");
  if (!cc.lambda && !cc.seedFile) {
    // Start just past the bifurcation point of the seed mode.
    RunConfig probe = cc;
    probe.lambda = 1.0;
    const ModelParams p0 = modelParams(probe);
    const KernelSeed ks = kernelSeed(cc, p0.dim);
    const double lc = bifurcationLambda(p0, ks.j, ks.k);
    if (!(lc > 0)) throw ConfigError("the seed mode never bifurcates; give lambda explicitly");
    cc.lambda = 1.01 * lc;
  }
  const ModelParams p = modelParams(cc);
  const int nsol = solverCutoff(cc, p.dim);
  const NewtonSettings ns = newtonSettings(cc);
  const StepPolicy sp = stepPolicy(cc);
  if (!(std::isfinite(*c.lambdaEnd) && *c.lambdaEnd > 0)) throw ConfigError("lambda_end must be positive");

  const NewtonResult nr = initialSolve(cc, p, nsol, ns, sp);
  if (!nr.converged()) {
    log << "initial point did not converge: " << toString(nr.status)
        << (nr.message.empty() ? "" : " (" + nr.message + ")") << "\n";
    return {kNonConvergence, {}};
  }
  const Branch b = continueBranch(nr.solution, *c.lambdaEnd, sp, ns);

  const std::string id = cc.branchId.value_or("0");
  RunConfig named = cc;
  named.output = "branch_" + id + ".csv";
  const auto csvPath = outputPath(named, "");
  const auto dir = outputDir(cc) / ("branch_" + id);
  std::ostringstream csv;
  csv << "lambda,norm,index\n";
  CommandResult out;
  for (std::size_t i = 0; i < b.points.size(); ++i) {
    csv << num(b.points[i].lambda) << "," << num(b.points[i].solutionNorm) << "," << b.points[i].morseIndex << "\n";
    char name[32];
    std::snprintf(name, sizeof name, "point_%04zu.json", i);
    saveSolution(dir / name, b.solutions[i]);
  }
  writeTextFile(csvPath, csv.str());
  out.files.push_back(csvPath);
  out.files.push_back(dir);
  for (const auto& ch : b.indexChanges) {
    log << "index change " << ch.indexBefore << " -> " << ch.indexAfter << " between lambda = " << ch.lambdaBefore
        << " and " << ch.lambdaAfter << " (candidate bifurcation)\n";
  }
  log << b.points.size() << " points, " << b.termination << "\n";
  log << "wrote " << csvPath.string() << " and " << dir.string() << "/\n";
  return out;
}

CommandResult cmdValidate(const RunConfig& c, std::ostream& log) {
  if (!c.solution) throw ConfigError("solution is required");
  const ValidationSettings vs = validationSettings(c);
  CandidateEquilibrium s;
  try {
    s = loadSolution(*c.solution);
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  ValidationCertificate cert = validateEquilibrium(s.params, s.w, vs);
  cert.solutionFile = *c.solution;
  RunConfig named = c;
  named.output = c.certificate.value_or("certificate.json");
  const auto path = outputPath(named, "");
  saveCertificate(path, cert);
  for (const auto& st : cert.stages) {
    log << "[" << st.status << "] " << st.name << ": " << st.detail << "\n";
  }
  log << (cert.success ? "validation succeeded" : "validation FAILED") << "; wrote " << path.string() << "\n";
  return {cert.success ? kSuccess : kValidationFailure, {path}};
}

CommandResult cmdRecheck(const RunConfig& c, std::ostream& log) {
  if (!c.certificate) throw ConfigError("certificate is required");
  ValidationCertificate cert;
  try {
    cert = loadCertificate(*c.certificate);
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  std::optional<FieldPair<double>> w;
  const std::string solName = c.solution.value_or(cert.solutionFile);
  if (!solName.empty()) {
    const auto path = locateSolution(solName, *c.certificate);
    try {
      const CandidateEquilibrium s = loadSolution(path);
      if (s.params.dim != cert.params.dim) throw ConfigError("solution dimension does not match the certificate");
      w = s.w;
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      throw ConfigError(std::string("solution file: ") + e.what());
    }
  } else {
    log << "no solution file; checking stored constants only\n";
  }
  const RecheckReport r = recheckCertificate(cert, w, c.full.value_or(false));
  for (const auto& item : r.items) {
    log << (item.ok ? "[pass] " : "[FAIL] ") << item.name << (item.detail.empty() ? "" : ": " + item.detail) << "\n";
  }
  log << (r.passed ? "recheck passed" : "recheck FAILED") << "\n";
  return {r.passed ? kSuccess : kValidationFailure, {}};
}

CommandResult cmdRender(const RunConfig& c, std::ostream& log) {
  if (!c.solution) throw ConfigError("solution is required");
  CandidateEquilibrium s;
  try {
    s = loadSolution(*c.solution);
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  const int pixels = c.pixels.value_or(256);
  if (pixels < 1) throw ConfigError("pixels must be positive");
  const std::string stem = std::filesystem::path(*c.solution).stem().string();
  if (s.params.dim == 2) {
    const auto path = outputPath(c, stem + ".ppm");
    writePpm(path, renderSolution(s, pixels));
    log << "wrote " << path.string() << "\n";
    return {kSuccess, {path}};
  }
  if (s.params.dim == 1) {
    const auto path = outputPath(c, stem + ".csv");
    const std::vector<double> w1 = evaluateOnGrid(s.w[0], pixels);
    const std::vector<double> w2 = evaluateOnGrid(s.w[1], pixels);
    std::ostringstream csv;
    csv << "x,u1,u2,u3\n";
    for (int i = 0; i < pixels; ++i) {
      const double u1 = s.params.mass.mu1 + w1[static_cast<std::size_t>(i)];
      const double u2 = s.params.mass.mu2 + w2[static_cast<std::size_t>(i)];
      csv << num((i + 0.5) / pixels) << "," << num(u1) << "," << num(u2) << "," << num(s.params.mass.mu3 - w1[static_cast<std::size_t>(i)] - w2[static_cast<std::size_t>(i)]) << "\n";
    }
    writeTextFile(path, csv.str());
    log << "wrote " << path.string() << "\n";
    return {kSuccess, {path}};
  }
  throw ConfigError("render supports one- and two-dimensional solutions only");
}

CommandResult runCommand(const std::string& command, const RunConfig& c, std::ostream& log) {
  if (command == "stability-map") return cmdStabilityMap(c, log);
  if (command == "find-equilibrium") return cmdFindEquilibrium(c, log);
  if (command == "continue-branch") return cmdContinueBranch(c, log);
  if (command == "validate") return cmdValidate(c, log);
  if (command == "recheck") return cmdRecheck(c, log);
  if (command == "render") return cmdRender(c, log);
  throw ConfigError("unknown command '" + command + "'");
}

}  // namespace tbcp::cli
