#pragma once

// JSON persistence of candidate solutions and validation certificates.
// Serialization is deterministic: load followed by save reproduces the
// original bytes of any file written by save.

#include <filesystem>
#include <string>

#include "tbcp/solver.hpp"
#include "tbcp/validate.hpp"

namespace tbcp {

std::string solutionToJson(const CandidateEquilibrium& s);
CandidateEquilibrium solutionFromJson(const std::string& text);
void saveSolution(const std::filesystem::path& path, const CandidateEquilibrium& s);
CandidateEquilibrium loadSolution(const std::filesystem::path& path);

std::string certificateToJson(const ValidationCertificate& c);
ValidationCertificate certificateFromJson(const std::string& text);
void saveCertificate(const std::filesystem::path& path, const ValidationCertificate& c);
ValidationCertificate loadCertificate(const std::filesystem::path& path);

// Whole-file helpers; errors carry the path.
std::string readTextFile(const std::filesystem::path& path);
void writeTextFile(const std::filesystem::path& path, const std::string& text);

}  // namespace tbcp
