#include "tbcp/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace tbcp {

using Json = nlohmann::ordered_json;

namespace {

constexpr const char* kSolutionFormat = "tbcp-solution";
constexpr int kFormatVersion = 1;

Json paramsToJson(const ModelParams& p) {
  Json j;
  j["d"] = p.dim;
  j["sigma"] = p.sigma;
  j["lambda"] = p.lambda;
  j["mu"] = {p.mass.mu1, p.mass.mu2, p.mass.mu3};
  return j;
}

ModelParams paramsFromJson(const Json& j) {
  ModelParams p;
  p.dim = j.at("d").get<int>();
  p.sigma = j.at("sigma").get<double>();
  p.lambda = j.at("lambda").get<double>();
  const Json& mu = j.at("mu");
  if (!mu.is_array() || mu.size() != 3) throw std::invalid_argument("params.mu must have three entries");
  p.mass = MassVector::fromTriple(mu[0].get<double>(), mu[1].get<double>(), mu[2].get<double>());
  p.check();
  return p;
}

Json fieldToJson(const CosineField& f) {
  Json j;
  j["dim"] = f.dim();
  j["degreeBound"] = f.degreeBound();
  j["coeffs"] = f.coeffs();
  return j;
}

CosineField fieldFromJson(const Json& j) {
  CosineField f(j.at("dim").get<int>(), j.at("degreeBound").get<int>());
  const auto c = j.at("coeffs").get<std::vector<double>>();
  if (c.size() != f.size()) throw std::invalid_argument("field coefficient count does not match its extent");
  f.coeffs() = c;
  return f;
}

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
  }
}

template <class F>
auto wrap(const char* what, F&& f) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw std::invalid_argument(std::string(what) + ": " + e.what());
  }
}

}  // namespace

std::string solutionToJson(const CandidateEquilibrium& s) {
  Json j;
  j["format"] = kSolutionFormat;
  j["version"] = kFormatVersion;
  j["params"] = paramsToJson(s.params);
  j["Nsol"] = s.nsol;
  j["residual_norm"] = s.residualNorm;
  j["morse_index"] = s.morseIndex;
  j["w"] = Json::array({fieldToJson(s.w[0]), fieldToJson(s.w[1])});
  return j.dump(2) + "\n";
}

CandidateEquilibrium solutionFromJson(const std::string& text) {
  const Json j = parse(text);
  return wrap("solution file", [&] {
    if (j.at("format").get<std::string>() != kSolutionFormat) throw std::invalid_argument("not a solution file");
    if (j.at("version").get<int>() != kFormatVersion) throw std::invalid_argument("unsupported solution version");
    CandidateEquilibrium s;
    s.params = paramsFromJson(j.at("params"));
    s.nsol = j.at("Nsol").get<int>();
    s.residualNorm = j.at("residual_norm").get<double>();
    s.morseIndex = j.at("morse_index").get<int>();
    const Json& w = j.at("w");
    if (!w.is_array() || w.size() != 2) throw std::invalid_argument("w must hold two fields");
    s.w = {fieldFromJson(w[0]), fieldFromJson(w[1])};
    for (const auto& f : s.w) {
      if (f.dim() != s.params.dim) throw std::invalid_argument("field dimension does not match params.d");
    }
    return s;
  });
}

std::string certificateToJson(const ValidationCertificate& c) {
  Json j;
  j["version"] = kFormatVersion;
  j["params"] = paramsToJson(c.params);
  j["solution_file"] = c.solutionFile;
  j["N"] = c.N;
  j["rho"] = c.rho;
  j["K_N"] = c.report.KN;
  j["C_T"] = c.report.CT;
  j["A"] = c.report.A;
  j["B"] = c.report.B;
  j["tau"] = c.report.tau;
  j["K"] = c.report.K;
  j["L"] = c.lipschitz.L;
  j["f_bounds"] = {{"f1_max", c.lipschitz.f1Max}, {"f2_max", c.lipschitz.f2Max}, {"f1_star", c.lipschitz.f1Star}};
  j["ell"] = {{"w", c.lipschitz.ellW}, {"lambda", c.lipschitz.ellLambda}};
  j["delta"] = {{"lambda", c.deltaLambda}, {"w", c.deltaW}};
  j["success"] = c.success;
  Json stages = Json::array();
  for (const auto& s : c.stages) stages.push_back({{"name", s.name}, {"status", s.status}, {"detail", s.detail}});
  j["stages"] = stages;
  j["provenance"] = {
      {"tool", c.provenance.tool}, {"version", c.provenance.version}, {"created", c.provenance.created}};
  return j.dump(2) + "\n";
}

ValidationCertificate certificateFromJson(const std::string& text) {
  const Json j = parse(text);
  return wrap("certificate", [&] {
    if (j.at("version").get<int>() != kFormatVersion) throw std::invalid_argument("unsupported certificate version");
    ValidationCertificate c;
    c.params = paramsFromJson(j.at("params"));
    c.solutionFile = j.at("solution_file").get<std::string>();
    c.N = j.at("N").get<int>();
    c.rho = j.at("rho").get<double>();
    c.report.N = c.N;
    c.report.KN = j.at("K_N").get<double>();
    c.report.CT = j.at("C_T").get<double>();
    c.report.A = j.at("A").get<double>();
    c.report.B = j.at("B").get<double>();
    c.report.tau = j.at("tau").get<double>();
    c.report.K = j.at("K").get<double>();
    c.lipschitz.L = j.at("L").get<std::array<double, 4>>();
    const Json& fb = j.at("f_bounds");
    c.lipschitz.f1Max = fb.at("f1_max").get<double>();
    c.lipschitz.f2Max = fb.at("f2_max").get<double>();
    c.lipschitz.f1Star = fb.at("f1_star").get<double>();
    c.lipschitz.ellW = j.at("ell").at("w").get<double>();
    c.lipschitz.ellLambda = j.at("ell").at("lambda").get<double>();
    c.deltaLambda = j.at("delta").at("lambda").get<double>();
    c.deltaW = j.at("delta").at("w").get<double>();
    c.success = j.at("success").get<bool>();
    c.report.success = c.success;
    for (const Json& s : j.at("stages")) {
      c.stages.push_back(
          {s.at("name").get<std::string>(), s.at("status").get<std::string>(), s.at("detail").get<std::string>()});
    }
    if (j.contains("provenance")) {
      const Json& p = j.at("provenance");
      c.provenance.tool = p.at("tool").get<std::string>();
      c.provenance.version = p.at("version").get<std::string>();
      c.provenance.created = p.at("created").get<std::string>();
    }
    return c;
  });
}

std::string readTextFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string() + " for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void writeTextFile(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

void saveSolution(const std::filesystem::path& path, const CandidateEquilibrium& s) {
  writeTextFile(path, solutionToJson(s));
}

CandidateEquilibrium loadSolution(const std::filesystem::path& path) {
  try {
    return solutionFromJson(readTextFile(path));
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(path.string() + ": " + e.what());
  }
}

void saveCertificate(const std::filesystem::path& path, const ValidationCertificate& c) {
  writeTextFile(path, certificateToJson(c));
}

ValidationCertificate loadCertificate(const std::filesystem::path& path) {
  try {
    return certificateFromJson(readTextFile(path));
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(path.string() + ": " + e.what());
  }
}

}  // namespace tbcp
