#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "json.hpp"
#include "tbcp/io.hpp"

namespace tbcp::cli {

using Json = nlohmann::json;

namespace {

const std::vector<std::string> kModelKeys = {"dim", "sigma", "lambda", "mu"};
const std::vector<std::string> kSolverKeys = {"nsol", "tol", "max_iter"};
const std::vector<std::string> kCommonKeys = {"output_dir", "threads"};

std::vector<std::string> join(std::initializer_list<std::vector<std::string>> parts) {
  std::vector<std::string> r;
  for (const auto& p : parts) r.insert(r.end(), p.begin(), p.end());
  return r;
}

const std::map<std::string, std::vector<std::string>>& keyTable() {
  static const std::map<std::string, std::vector<std::string>> t = {
      {"stability-map", join({kCommonKeys, {"resolution", "output"}})},
      {"find-equilibrium", join({kCommonKeys, kModelKeys, kSolverKeys, {"seed", "seed_file", "output"}})},
      {"continue-branch",
       join({kCommonKeys, kModelKeys, kSolverKeys,
             {"seed", "seed_file", "lambda_end", "step", "min_step", "max_step", "branch_id"}})},
      {"validate",
       join({kCommonKeys,
             {"solution", "certificate", "N", "tau_target", "ell_w", "ell_lambda", "max_matrix_size"}})},
      {"recheck", join({kCommonKeys, {"certificate", "solution", "full"}})},
      {"render", join({kCommonKeys, {"solution", "pixels", "output"}})},
  };
  return t;
}

template <class T>
T get(const Json& j, const char* key) {
  try {
    return j.get<T>();
  } catch (const Json::exception&) {
    throw ConfigError(std::string("config key '") + key + "' has the wrong type");
  }
}

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

}  // namespace

const std::vector<std::string>& allowedKeys(const std::string& command) {
  static const std::vector<std::string> none;
  const auto it = keyTable().find(command);
  return it == keyTable().end() ? none : it->second;
}

void RunConfig::overrideWith(const RunConfig& o) {
  auto take = [](auto& dst, const auto& src) {
    if (src) dst = src;
  };
  take(dim, o.dim);
  take(sigma, o.sigma);
  take(lambda, o.lambda);
  take(mu, o.mu);
  take(nsol, o.nsol);
  take(tol, o.tol);
  take(maxIter, o.maxIter);
  take(seedJ, o.seedJ);
  take(seedK, o.seedK);
  take(amplitude, o.amplitude);
  take(seedFile, o.seedFile);
  take(lambdaEnd, o.lambdaEnd);
  take(step, o.step);
  take(minStep, o.minStep);
  take(maxStep, o.maxStep);
  take(branchId, o.branchId);
  take(N, o.N);
  take(tauTarget, o.tauTarget);
  take(ellW, o.ellW);
  take(ellLambda, o.ellLambda);
  take(maxMatrixSize, o.maxMatrixSize);
  take(solution, o.solution);
  take(certificate, o.certificate);
  take(output, o.output);
  take(full, o.full);
  take(resolution, o.resolution);
  take(pixels, o.pixels);
  take(outputDir, o.outputDir);
  take(threads, o.threads);
}

RunConfig parseConfig(const std::string& text, const std::string& command) {
  const auto& allowed = allowedKeys(command);
  require(!allowed.empty(), "unknown command '" + command + "'");
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  require(j.is_object(), "config must be a JSON object");
  for (const auto& [key, _] : j.items()) {
    require(std::find(allowed.begin(), allowed.end(), key) != allowed.end(),
            "unknown config key '" + key + "' for " + command);
  }
  RunConfig c;
  auto opt = [&](const char* key, auto& field) {
    if (j.contains(key)) field = get<typename std::decay_t<decltype(field)>::value_type>(j[key], key);
  };
  opt("dim", c.dim);
  opt("sigma", c.sigma);
  opt("lambda", c.lambda);
  opt("mu", c.mu);
  opt("nsol", c.nsol);
  opt("tol", c.tol);
  opt("max_iter", c.maxIter);
  opt("seed_file", c.seedFile);
  opt("lambda_end", c.lambdaEnd);
  opt("step", c.step);
  opt("min_step", c.minStep);
  opt("max_step", c.maxStep);
  opt("branch_id", c.branchId);
  opt("tau_target", c.tauTarget);
  opt("ell_w", c.ellW);
  opt("ell_lambda", c.ellLambda);
  opt("max_matrix_size", c.maxMatrixSize);
  opt("solution", c.solution);
  opt("certificate", c.certificate);
  opt("output", c.output);
  opt("full", c.full);
  opt("resolution", c.resolution);
  opt("pixels", c.pixels);
  opt("output_dir", c.outputDir);
  opt("threads", c.threads);
  if (j.contains("N")) {
    if (j["N"].is_string()) {
      require(j["N"].get<std::string>() == "auto", "config key 'N' must be an integer or \"auto\"");
      c.N = 0;
    } else {
      c.N = get<int>(j["N"], "N");
    }
  }
  if (j.contains("seed")) {
    const Json& s = j["seed"];
    require(s.is_object(), "config key 'seed' must be an object");
    for (const auto& [key, _] : s.items()) {
      require(key == "j" || key == "k" || key == "amplitude", "unknown seed key '" + key + "'");
    }
    if (s.contains("j")) c.seedJ = get<int>(s["j"], "seed.j");
    if (s.contains("k")) c.seedK = get<std::vector<int>>(s["k"], "seed.k");
    if (s.contains("amplitude")) c.amplitude = get<double>(s["amplitude"], "seed.amplitude");
  }
  return c;
}

RunConfig loadConfig(const std::filesystem::path& path, const std::string& command) {
  std::string text;
  try {
    text = readTextFile(path);
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  try {
    return parseConfig(text, command);
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

ModelParams modelParams(const RunConfig& c) {
  ModelParams p;
  p.dim = c.dim.value_or(1);
  require(c.lambda.has_value(), "lambda is required");
  require(c.mu.has_value(), "mu is required");
  p.lambda = *c.lambda;
  p.sigma = c.sigma.value_or(0.0);
  require(p.dim == 1 || p.dim == 2 || p.dim == 3, "dim must be 1, 2 or 3");
  require(std::isfinite(p.lambda) && p.lambda > 0, "lambda must be positive");
  require(std::isfinite(p.sigma) && p.sigma >= 0, "sigma must be non-negative");
  const auto& mu = *c.mu;
  try {
    if (mu.size() == 2) p.mass = MassVector::fromPair(mu[0], mu[1]);
    else if (mu.size() == 3) p.mass = MassVector::fromTriple(mu[0], mu[1], mu[2]);
    else throw ConfigError("mu must have two or three entries");
    p.check();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return p;
}

NewtonSettings newtonSettings(const RunConfig& c) {
  NewtonSettings s;
  if (c.tol) s.tol = *c.tol;
  if (c.maxIter) s.maxIter = *c.maxIter;
  require(s.tol > 0, "tol must be positive");
  require(s.maxIter > 0, "max_iter must be positive");
  return s;
}

KernelSeed kernelSeed(const RunConfig& c, int dim) {
  KernelSeed s;
  s.j = c.seedJ.value_or(1);
  require(s.j == 1 || s.j == 2, "seed.j must be 1 or 2");
  std::vector<int> k = c.seedK.value_or(std::vector<int>(static_cast<std::size_t>(dim), 0));
  if (!c.seedK) k[0] = 1;
  require(static_cast<int>(k.size()) == dim, "seed.k must have one entry per dimension");
  s.k = MultiIndex::zero(dim);
  for (int a = 0; a < dim; ++a) {
    require(k[static_cast<std::size_t>(a)] >= 0, "seed.k entries must be non-negative");
    s.k[a] = k[static_cast<std::size_t>(a)];
  }
  require(!s.k.isZero(), "seed.k must not be the zero mode");
  s.amplitude = c.amplitude.value_or(0.05);
  require(std::isfinite(s.amplitude), "seed.amplitude must be finite");
  return s;
}

StepPolicy stepPolicy(const RunConfig& c) {
  StepPolicy s;
  if (c.step) s.initialStep = *c.step;
  if (c.minStep) s.minStep = *c.minStep;
  if (c.maxStep) s.maxStep = *c.maxStep;
  require(s.initialStep > 0 && s.minStep > 0 && s.maxStep >= s.minStep, "invalid continuation step sizes");
  return s;
}

ValidationSettings validationSettings(const RunConfig& c) {
  ValidationSettings s;
  if (c.N) s.N = *c.N;
  if (c.tauTarget) s.tauTarget = *c.tauTarget;
  if (c.ellW) s.ellW = *c.ellW;
  if (c.ellLambda) s.ellLambda = *c.ellLambda;
  if (c.maxMatrixSize) s.maxMatrixSize = static_cast<std::size_t>(std::max(0L, *c.maxMatrixSize));
  require(s.N == 0 || s.N >= 2, "N must be \"auto\" or at least 2");
  require(s.tauTarget > 0 && s.tauTarget < 1, "tau_target must lie in (0, 1)");
  require(s.ellW > 0, "ell_w must be positive");
  require(!c.ellLambda || *c.ellLambda >= 0, "ell_lambda must be non-negative");
  require(!c.maxMatrixSize || *c.maxMatrixSize > 0, "max_matrix_size must be positive");
  return s;
}

int solverCutoff(const RunConfig& c, int dim) {
  const int n = c.nsol.value_or(defaultSolverCutoff(dim));
  require(n >= 2, "nsol must be at least 2");
  return n;
}

std::filesystem::path outputDir(const RunConfig& c) { return c.outputDir.value_or("."); }

std::filesystem::path outputPath(const RunConfig& c, const std::string& fallback) {
  const std::filesystem::path p = c.output.value_or(fallback);
  return p.is_absolute() ? p : outputDir(c) / p;
}

}  // namespace tbcp::cli
