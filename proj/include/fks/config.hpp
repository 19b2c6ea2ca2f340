#pragma once

// Run configuration read from a sectioned key = value file.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "fks/external_potential.hpp"
#include "fks/grid.hpp"
#include "fks/ks_fractional.hpp"
#include "fks/lindblad.hpp"

namespace fks {

enum class SweepAxis { omega, K, alpha };

std::string_view to_string(SweepAxis a);
SweepAxis sweep_axis_from_string(std::string_view s);

struct SweepConfig {
  std::vector<double> omega{0.1, 0.2, 0.4, 0.6, 0.8, 1.0, 1.5, 2.0};
  std::vector<double> K{0.1, 0.2, 0.5, 1.0, 1.5, 2.0};
  std::vector<double> alpha{0.3, 0.7};
  double t = 3.14159265358979323846;

  const std::vector<double>& values(SweepAxis a) const;
};

struct OutputConfig {
  std::string directory = "fks_run";
  bool csv = true;
  bool svg = true;
};

struct SimulationConfig {
  SpatialGrid grid;
  std::vector<double> times;
  double fd_dt = 1e-4;
  double gamma = 0.15;
  TwoLevelDensity rho0 = TwoLevelDensity::table1();
  std::string lambda_e = "5.5e-5 m";  ///< recorded, not used
  HarmonicParams basis;               ///< oscillator that supplies phi_0, phi_1
  ExternalPotential external = KickedOscillatorParams{};
  FracConfig frac;
  SweepConfig sweeps;
  OutputConfig output;

  /// Parameter-table state, kicked oscillator, times {0, pi/4, pi/2, pi}.
  static SimulationConfig defaults();

  DephasingParams dephasing() const;
  void validate() const;
};

/// Parses "pi", "pi/4", "0.5*pi", "3*pi/4", "1e-3" and similar products/quotients.
double parse_scalar(std::string_view text);
std::vector<double> parse_list(std::string_view text);

/// Unspecified keys keep their defaults; unknown sections or keys throw ConfigError.
SimulationConfig parse_config(const std::string& text);
SimulationConfig load_config(const std::filesystem::path& path);

/// Canonical key = value rendering; parse_config(render_config(c)) reproduces c.
std::string render_config(const SimulationConfig& c);

}  // namespace fks
