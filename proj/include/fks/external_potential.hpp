#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "fks/grid.hpp"

namespace fks {

enum class SampleFlag : std::uint8_t {
  computed = 0,
  repaired = 1,  ///< interior singularity replaced by the neighbour mean
  masked = 2,    ///< outside the density window; edge value held
};

/// Real potential sampled on a grid at time t.
struct PotentialField {
  double t = 0.0;
  SpatialGrid grid;
  std::vector<double> values;
  std::vector<SampleFlag> flags;

  /// Wraps raw samples with every flag set to computed.
  static PotentialField from_values(double t, const SpatialGrid& grid, std::vector<double> values);

  /// Flags samples where density <= floor as masked (their values are left as is).
  void mask_outside(std::span<const double> density, double floor);

  std::size_t size() const noexcept { return values.size(); }
  bool all_finite() const noexcept;
};

enum class HarmonicSign { as_printed_minus, standard_plus };
enum class CombMode { gaussian_comb, mean_field, off_kick_zero };

std::string_view to_string(HarmonicSign s);
std::string_view to_string(CombMode m);
HarmonicSign harmonic_sign_from_string(std::string_view s);
CombMode comb_mode_from_string(std::string_view s);

/// V(x, t) = s m w^2 x^2 / 2 + K cos(k x) C(t), C a regularised kick comb.
struct KickedOscillatorParams {
  double mass = 1.0;
  double omega = 0.1;
  double K = 1.0;
  double k = 1.0;
  double tau = 0.1;
  HarmonicSign sign = HarmonicSign::as_printed_minus;
  CombMode comb = CombMode::gaussian_comb;
  double sigma_t = 0.1 / 50.0;
  double frame_width = 1e-3;  ///< h_t for off-kick-zero

  void validate() const;
};

struct HarmonicParams {
  double omega = 1.0;
  double mass = 1.0;
};

using ExternalPotential = std::variant<HarmonicParams, KickedOscillatorParams>;

/// C(t): Gaussian comb sum_n exp(-(t - n tau)^2 / 2 sigma^2) / (sigma sqrt(2 pi))
/// truncated at 6 sigma, its period mean 1/tau, or a one-frame box of height 1/h_t.
double kick_comb(const KickedOscillatorParams& p, double t);

PotentialField eval_harmonic(double omega, double mass, const SpatialGrid& grid, double t);
PotentialField eval_delta_kicked(const KickedOscillatorParams& p, const SpatialGrid& grid, double t);
PotentialField evaluate(const ExternalPotential& v, const SpatialGrid& grid, double t);

}  // namespace fks
