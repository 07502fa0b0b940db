// tbcp command-line front end.

#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"
#include "tbcp/parallel.hpp"

namespace {

using tbcp::cli::RunConfig;

template <class T>
void bindOption(CLI::App* app, const std::string& name, std::optional<T>& field, const std::string& desc) {
  app->add_option_function<T>(name, [&field](const T& v) { field = v; }, desc);
}

void modelOptions(CLI::App* app, RunConfig& o) {
  bindOption(app, "--dim", o.dim, "spatial dimension (1, 2 or 3)");
  bindOption(app, "--sigma", o.sigma, "nonlocal interaction strength sigma >= 0");
  bindOption(app, "--lambda", o.lambda, "lambda = 1/epsilon^2 > 0");
  app->add_option_function<std::vector<double>>("--mu", [&o](const std::vector<double>& v) { o.mu = v; },
                                                "mass vector (mu1 mu2 [mu3])")
      ->expected(2, 3);
  bindOption(app, "--nsol", o.nsol, "Galerkin cutoff of the solver");
  bindOption(app, "--tol", o.tol, "Newton tolerance on the Y-norm residual");
  bindOption(app, "--max-iter", o.maxIter, "maximum Newton iterations");
}

void seedOptions(CLI::App* app, RunConfig& o) {
  bindOption(app, "--seed-j", o.seedJ, "eigenvector index j of the kernel seed");
  app->add_option_function<std::vector<int>>("--seed-k", [&o](const std::vector<int>& v) { o.seedK = v; },
                                             "wave vector k of the kernel seed")
      ->expected(1, 3);
  bindOption(app, "--amplitude", o.amplitude, "kernel seed amplitude");
  bindOption(app, "--seed-file", o.seedFile, "solution file used as the initial guess");
}

int fail(const std::string& what, int code) {
  std::cerr << "tbcp: " << what << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rigorous validation of triblock copolymer equilibria"};
  app.require_subcommand(1);
  std::string configPath;
  RunConfig flags;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", configPath, "JSON run configuration")->check(CLI::ExistingFile);
    bindOption(sub, "--output-dir", flags.outputDir, "directory for outputs (created if missing)");
    bindOption(sub, "--threads", flags.threads, "worker threads for matrix assembly");
  };

  auto* stab = app.add_subcommand("stability-map", "classify the homogeneous state over the Gibbs triangle");
  common(stab);
  bindOption(stab, "--resolution", flags.resolution, "grid points per edge");
  bindOption(stab, "--output", flags.output, "output file stem");

  auto* find = app.add_subcommand("find-equilibrium", "compute an equilibrium by Newton's method");
  common(find);
  modelOptions(find, flags);
  seedOptions(find, flags);
  bindOption(find, "--output", flags.output, "solution file");

  auto* cont = app.add_subcommand("continue-branch", "natural-parameter continuation in lambda");
  common(cont);
  modelOptions(cont, flags);
  seedOptions(cont, flags);
  bindOption(cont, "--lambda-end", flags.lambdaEnd, "final lambda");
  bindOption(cont, "--step", flags.step, "initial step in lambda");
  bindOption(cont, "--min-step", flags.minStep, "smallest admissible step");
  bindOption(cont, "--max-step", flags.maxStep, "largest step");
  bindOption(cont, "--branch-id", flags.branchId, "branch label used in file names");

  auto* val = app.add_subcommand("validate", "rigorously validate a solution");
  common(val);
  bindOption(val, "--solution", flags.solution, "solution file");
  bindOption(val, "--certificate", flags.certificate, "certificate file to write");
  val->add_option_function<std::string>(
      "--N",
      [&flags](const std::string& v) {
        if (v == "auto") {
          flags.N = 0;
        } else {
          try {
            flags.N = std::stoi(v);
          } catch (const std::exception&) {
            throw CLI::ValidationError("--N", "must be an integer or 'auto'");
          }
        }
      },
      "matrix cutoff or 'auto'");
  bindOption(val, "--tau-target", flags.tauTarget, "target for sqrt(A^2+B^2) in automatic N selection");
  bindOption(val, "--ell-w", flags.ellW, "Lipschitz radius in w");
  bindOption(val, "--ell-lambda", flags.ellLambda, "Lipschitz radius in lambda (default 0.01 lambda)");
  bindOption(val, "--max-matrix-size", flags.maxMatrixSize, "largest admissible K_N matrix dimension");

  auto* rec = app.add_subcommand("recheck", "re-verify a certificate");
  common(rec);
  bindOption(rec, "--certificate", flags.certificate, "certificate file");
  bindOption(rec, "--solution", flags.solution, "solution file (default: the one named in the certificate)");
  rec->add_flag_function("--full", [&flags](std::int64_t n) { flags.full = n > 0; }, "also recompute K_N");

  auto* ren = app.add_subcommand("render", "render a solution (PPM in 2D, CSV in 1D)");
  common(ren);
  bindOption(ren, "--solution", flags.solution, "solution file");
  bindOption(ren, "--pixels", flags.pixels, "samples per axis");
  bindOption(ren, "--output", flags.output, "output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return tbcp::cli::kConfigError;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    RunConfig cfg;
    if (!configPath.empty()) cfg = tbcp::cli::loadConfig(configPath, command);
    if (const char* env = std::getenv("TBCP_OUTPUT_DIR"); env && *env) cfg.outputDir = env;
    if (const char* env = std::getenv("TBCP_THREADS"); env && *env) {
      try {
        cfg.threads = std::stoi(env);
      } catch (const std::exception&) {
        return fail("TBCP_THREADS must be an integer", tbcp::cli::kConfigError);
      }
    }
    cfg.overrideWith(flags);
    if (cfg.threads) {
      if (*cfg.threads < 1) return fail("threads must be positive", tbcp::cli::kConfigError);
      tbcp::setThreadCount(*cfg.threads);
    }
    return tbcp::cli::runCommand(command, cfg, std::cout).exitCode;
  } catch (const tbcp::cli::ConfigError& e) {
    return fail(e.what(), tbcp::cli::kConfigError);
  } catch (const std::exception& e) {
    return fail(e.what(), tbcp::cli::kConfigError);
  }
}
