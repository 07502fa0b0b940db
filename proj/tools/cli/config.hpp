#pragma once

// Run configuration: one JSON document per run, flags layered on top.

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tbcp/model.hpp"
#include "tbcp/solver.hpp"
#include "tbcp/validate.hpp"

namespace tbcp::cli {

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  // model
  std::optional<int> dim;
  std::optional<double> sigma;
  std::optional<double> lambda;
  std::optional<std::vector<double>> mu;  // (μ1, μ2) or (μ1, μ2, μ3)
  // solver
  std::optional<int> nsol;
  std::optional<double> tol;
  std::optional<int> maxIter;
  // seed
  std::optional<int> seedJ;
  std::optional<std::vector<int>> seedK;
  std::optional<double> amplitude;
  std::optional<std::string> seedFile;
  // continuation
  std::optional<double> lambdaEnd;
  std::optional<double> step;
  std::optional<double> minStep;
  std::optional<double> maxStep;
  std::optional<std::string> branchId;
  // validation (N = 0 means auto)
  std::optional<int> N;
  std::optional<double> tauTarget;
  std::optional<double> ellW;
  std::optional<double> ellLambda;
  std::optional<long> maxMatrixSize;
  // files and misc
  std::optional<std::string> solution;
  std::optional<std::string> certificate;
  std::optional<std::string> output;
  std::optional<bool> full;
  std::optional<int> resolution;
  std::optional<int> pixels;
  std::optional<std::string> outputDir;
  std::optional<int> threads;

  // Fields set in `o` replace those of *this.
  void overrideWith(const RunConfig& o);
};

// Parses a config document; keys not accepted by `command` are rejected.
RunConfig parseConfig(const std::string& json, const std::string& command);
RunConfig loadConfig(const std::filesystem::path& path, const std::string& command);

// Config keys accepted by a command (empty for unknown commands).
const std::vector<std::string>& allowedKeys(const std::string& command);

// Range-checked accessors; throw ConfigError.
ModelParams modelParams(const RunConfig& c);
NewtonSettings newtonSettings(const RunConfig& c);
KernelSeed kernelSeed(const RunConfig& c, int dim);
StepPolicy stepPolicy(const RunConfig& c);
ValidationSettings validationSettings(const RunConfig& c);
int solverCutoff(const RunConfig& c, int dim);
std::filesystem::path outputDir(const RunConfig& c);
// Relative paths are placed under the output directory.
std::filesystem::path outputPath(const RunConfig& c, const std::string& fallback);

}  // namespace tbcp::cli
