#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "fks/config.hpp"

namespace fks::cli {

enum ExitCode : int {
  kOk = 0,
  kValidationFailure = 1,
  kConfigError = 2,
  kUnrepairable = 3,
};

/// Parses and runs one command line (args excludes the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// simulate with errors mapped to exit codes.
int simulate_command(const SimulationConfig& cfg, const std::filesystem::path& out_dir,
                     std::ostream& out, std::ostream& err);

}  // namespace fks::cli
