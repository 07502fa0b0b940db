#pragma once

// The tbcp workflows.  Each returns an exit code from the stable contract
// below; configuration problems are thrown as ConfigError.

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "config.hpp"

namespace tbcp::cli {

enum ExitCode : int {
  kSuccess = 0,
  kValidationFailure = 1,
  kConfigError = 2,
  kNonConvergence = 3,
};

struct CommandResult {
  int exitCode = kSuccess;
  std::vector<std::filesystem::path> files;
};

CommandResult cmdStabilityMap(const RunConfig& c, std::ostream& log);
CommandResult cmdFindEquilibrium(const RunConfig& c, std::ostream& log);
CommandResult cmdContinueBranch(const RunConfig& c, std::ostream& log);
CommandResult cmdValidate(const RunConfig& c, std::ostream& log);
CommandResult cmdRecheck(const RunConfig& c, std::ostream& log);
CommandResult cmdRender(const RunConfig& c, std::ostream& log);

// Dispatch by subcommand name.
CommandResult runCommand(const std::string& command, const RunConfig& c, std::ostream& log);

}  // namespace tbcp::cli
