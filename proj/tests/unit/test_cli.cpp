#include <filesystem>
#include <sstream>

#include "commands.hpp"
#include "config.hpp"
#include "doctest.h"
#include "image.hpp"
#include "tbcp/io.hpp"

using namespace tbcp;
using namespace tbcp::cli;

namespace {

struct TempDir {
  std::filesystem::path path;
  explicit TempDir(const std::string& name) : path(std::filesystem::temp_directory_path() / name) {
    std::filesystem::remove_all(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

CandidateEquilibrium flat2d(int n) {
  CandidateEquilibrium s;
  s.params.dim = 2;
  s.params.sigma = 6.0;
  s.params.lambda = 10.0;
  s.params.mass = MassVector::fromTriple(0.3, 0.2, 0.5);
  s.w = {CosineField(2, n), CosineField(2, n)};
  s.nsol = n;
  return s;
}

}  // namespace

TEST_CASE("config keys are checked per command") {
  CHECK_NOTHROW(parseConfig(R"({"dim": 1, "lambda": 50, "mu": [0.5, 0.4, 0.1]})", "find-equilibrium"));
  CHECK_THROWS_AS(parseConfig(R"({"lambda": 50, "bogus": 1})", "find-equilibrium"), ConfigError);
  CHECK_THROWS_AS(parseConfig(R"({"lambda_end": 50})", "find-equilibrium"), ConfigError);
  CHECK_THROWS_AS(parseConfig(R"({"seed": {"q": 1}})", "find-equilibrium"), ConfigError);
  CHECK_THROWS_AS(parseConfig(R"({"lambda": "x"})", "find-equilibrium"), ConfigError);
  CHECK_THROWS_AS(parseConfig("{", "validate"), ConfigError);
  CHECK_THROWS_AS(parseConfig("{}", "no-such-command"), ConfigError);
  const RunConfig auto_ = parseConfig(R"({"N": "auto"})", "validate");
  CHECK(*auto_.N == 0);
  CHECK_THROWS_AS(parseConfig(R"({"N": "many"})", "validate"), ConfigError);
}

TEST_CASE("flags override config values") {
  RunConfig file = parseConfig(R"({"lambda": 50, "sigma": 6, "mu": [0.5, 0.4]})", "find-equilibrium");
  RunConfig flags;
  flags.lambda = 60.0;
  file.overrideWith(flags);
  CHECK(*file.lambda == 60.0);
  CHECK(*file.sigma == 6.0);
  const ModelParams p = modelParams(file);
  CHECK(p.mass.mu3 == doctest::Approx(0.1));
}

TEST_CASE("range checks") {
  RunConfig c;
  CHECK_THROWS_AS(modelParams(c), ConfigError);
  c.lambda = 10.0;
  c.mu = std::vector<double>{0.5, 0.6, 0.1};
  CHECK_THROWS_AS(modelParams(c), ConfigError);
  c.mu = std::vector<double>{0.5};
  CHECK_THROWS_AS(modelParams(c), ConfigError);
  RunConfig v;
  v.tauTarget = 1.5;
  CHECK_THROWS_AS(validationSettings(v), ConfigError);
  RunConfig k;
  k.seedK = std::vector<int>{0, 0};
  CHECK_THROWS_AS(kernelSeed(k, 2), ConfigError);
}

TEST_CASE("channel mapping clamps") {
  CHECK(toChannel(-0.2) == 0);
  CHECK(toChannel(1.7) == 255);
  CHECK(toChannel(0.5) == 128);
}

TEST_CASE("render of the homogeneous state is uniform") {
  TempDir tmp("tbcp_cli_render");
  saveSolution(tmp.path / "flat.json", flat2d(3));
  RunConfig c;
  c.solution = (tmp.path / "flat.json").string();
  c.outputDir = (tmp.path / "a" / "b").string();
  c.pixels = 7;
  std::ostringstream log;
  const CommandResult r = cmdRender(c, log);
  REQUIRE(r.exitCode == kSuccess);
  REQUIRE(std::filesystem::exists(tmp.path / "a" / "b" / "flat.ppm"));
  const RgbImage img = readPpm(tmp.path / "a" / "b" / "flat.ppm");
  CHECK(img.width == 7);
  CHECK(img.height == 7);
  for (std::size_t i = 0; i < img.rgb.size(); i += 3) {
    REQUIRE(img.rgb[i] == 77);
    REQUIRE(img.rgb[i + 1] == 51);
    REQUIRE(img.rgb[i + 2] == 128);
  }
}

TEST_CASE("stability map at the smallest resolution") {
  TempDir tmp("tbcp_cli_map");
  RunConfig c;
  c.resolution = 2;
  c.outputDir = tmp.path.string();
  std::ostringstream log;
  CHECK(cmdStabilityMap(c, log).exitCode == kSuccess);
  const RgbImage img = readPpm(tmp.path / "stability_map.ppm");
  CHECK(img.width == 2);
  CHECK(log.str().find("TwoUnstable") != std::string::npos);
  c.resolution = 1;
  CHECK_THROWS_AS(cmdStabilityMap(c, log), ConfigError);
}

TEST_CASE("exit codes") {
  TempDir tmp("tbcp_cli_exit");
  std::ostringstream log;
  RunConfig missing;
  CHECK_THROWS_AS(cmdValidate(missing, log), ConfigError);
  CHECK_THROWS_AS(cmdRecheck(missing, log), ConfigError);
  RunConfig bad;
  bad.solution = (tmp.path / "none.json").string();
  CHECK_THROWS_AS(cmdValidate(bad, log), ConfigError);

  // Newton with a single iteration from a large seed cannot converge.
  RunConfig f;
  f.dim = 1;
  f.sigma = 6.0;
  f.lambda = 50.0;
  f.mu = std::vector<double>{0.5, 0.4, 0.1};
  f.nsol = 16;
  f.maxIter = 1;
  f.amplitude = 0.5;
  f.outputDir = tmp.path.string();
  CHECK(cmdFindEquilibrium(f, log).exitCode == kNonConvergence);

  // w = 0 below the first crossing validates; with N forced too small it fails.
  CandidateEquilibrium s = flat2d(2);
  s.params.dim = 1;
  s.params.lambda = 1.0;
  s.params.mass = MassVector::fromTriple(0.5, 0.4, 0.1);
  s.w = {CosineField(1, 2), CosineField(1, 2)};
  saveSolution(tmp.path / "zero.json", s);
  RunConfig v;
  v.solution = (tmp.path / "zero.json").string();
  v.outputDir = tmp.path.string();
  CHECK(cmdValidate(v, log).exitCode == kSuccess);
  RunConfig rc;
  rc.certificate = (tmp.path / "certificate.json").string();
  CHECK(cmdRecheck(rc, log).exitCode == kSuccess);
  CHECK(runCommand("recheck", rc, log).exitCode == kSuccess);
  CHECK_THROWS_AS(runCommand("nope", rc, log), ConfigError);
}
