#pragma once

// Space-fractional Kohn-Sham orbital, its fractional derivative components,
// and the fractional correlation / Kohn-Sham potentials.

#include <complex>
#include <cstddef>
#include <vector>

#include "fks/exec.hpp"
#include "fks/external_potential.hpp"
#include "fks/fields.hpp"
#include "fks/fractional_kernel.hpp"
#include "fks/ks_exact.hpp"

namespace fks {

struct FracConfig {
  FracOrder order{0.3};
  PowerBranchMode branch = PowerBranchMode::signed_power;
  int repair_max_run = 3;

  void validate() const;
};

/// sqrt(n) (1 + i theta / Gamma(1 + alpha)): the Mittag-Leffler orbital cut after two terms.
KsOrbital frac_orbital_trunc(const FieldSnapshot& snap, const FracConfig& cfg);

/// sqrt(n) E_alpha(i theta). Series errors propagate.
KsOrbital frac_orbital_full(const FieldSnapshot& snap, const FracConfig& cfg);

/// E_alpha(i theta) Gamma(3/2) / Gamma(3/2 - alpha) n^{1/2 - alpha}; NaN where n <= window.
std::vector<cplx> frac_partial_density(const FieldSnapshot& snap, const FracConfig& cfg,
                                       double window = kPotentialWindow);

/// i sqrt(n) alpha^{-alpha} theta^{1-alpha} E_alpha(i theta), theta^{1-alpha} via cfg.branch.
std::vector<cplx> frac_partial_phase(const FieldSnapshot& snap, const FracConfig& cfg);

/// d^alpha_n phi (n')^alpha + d^alpha_theta phi (theta')^alpha.
std::vector<cplx> frac_spatial_derivative(const FieldSnapshot& snap, const FracConfig& cfg,
                                          double window = kPotentialWindow);

/// -d_t theta Gamma(1+a) / (Gamma(1+a)^2 + theta^2)
///   + (1/(2 sqrt n)) Gamma(3/2)/Gamma(3/2 - a) n^{1/2 - a} (n')^a - V_ext.
/// Samples with n <= window are NaN and flagged masked; strict-branch failures are NaN.
PotentialField frac_correlation_potential(const FieldSnapshot& snap, const PotentialField& v_ext,
                                          const FracConfig& cfg, double window = kPotentialWindow,
                                          kernels::Exec exec = kernels::Exec::parallel);

/// V~_KS = V~_c + V_ext.
PotentialField frac_ks_potential(const PotentialField& v_c_frac, const PotentialField& v_ext);

struct RepairReport {
  std::size_t repaired = 0;  ///< interior points replaced by the neighbour mean
  std::size_t held = 0;      ///< masked edge points filled from the nearest window value
};

/// Replaces non-finite samples. A run touching the grid edge whose samples are
/// all masked is filled with the nearest finite value; any other run of at
/// most repair_max_run points becomes the mean of its finite neighbours.
/// Longer runs throw UnrepairableSingularity naming the x-range.
PotentialField singularity_repair(const PotentialField& field, const FracConfig& cfg,
                                  RepairReport* report = nullptr);

}  // namespace fks
