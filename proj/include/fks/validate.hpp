#pragma once

// Acceptance suite shared by `fks validate` and the acceptance test binary.

#include <filesystem>
#include <string>
#include <vector>

#include "fks/config.hpp"

namespace fks {

struct CheckResult {
  int id = 0;
  std::string name;
  bool gating = true;
  bool passed = false;
  double measured = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct ValidationReport {
  std::vector<CheckResult> checks;

  bool gating_passed() const;
  const CheckResult* find(int id) const;
  /// One line per check, then a totals line.
  std::string render() const;
};

/// Runs every check. `cfg` drives the determinism and repair-exit checks;
/// `scratch` receives their temporary run directories (removed afterwards).
ValidationReport run_validation(const SimulationConfig& cfg = SimulationConfig::defaults(),
                                const std::filesystem::path& scratch = {});

}  // namespace fks
