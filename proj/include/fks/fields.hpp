#pragma once

// Harmonic-oscillator two-level basis, grid density n(x, t), and the phase
// theta(x, t) that makes the one-orbital Kohn-Sham system carry that density.

#include <span>
#include <vector>

#include "fks/exec.hpp"
#include "fks/grid.hpp"
#include "fks/lindblad.hpp"

namespace fks {

/// phi_0 and phi_1 of the harmonic oscillator (hbar = 1) sampled on a grid.
std::vector<double> ho_eigenfunction(int level, double omega, double mass, const SpatialGrid& grid);

struct TwoLevelBasis {
  SpatialGrid grid;
  double omega = 1.0;
  double mass = 1.0;
  std::vector<double> phi0;
  std::vector<double> phi1;
  double E0 = 0.5;
  double E1 = 1.5;

  static TwoLevelBasis harmonic(const SpatialGrid& grid, double omega = 1.0, double mass = 1.0);

  DephasingParams dephasing(double gamma) const { return {gamma, E0, E1}; }
};

/// n = rho00 phi0^2 + rho11 phi1^2 + 2 Re(rho01) phi0 phi1, clipped at 0.
/// Throws InvariantViolation if n < -1e-12 anywhere.
std::vector<double> assemble_density(const TwoLevelDensity& rho, const TwoLevelBasis& basis);

/// d n / dt from the Lindblad right-hand side (no time differencing).
std::vector<double> density_time_derivative(const TwoLevelDensity& rho, const DephasingParams& p,
                                            const TwoLevelBasis& basis);

struct PhaseField {
  std::vector<double> theta;
  std::vector<double> dtheta_dx;
  // Inclusive index range where the velocity was evaluated.
  std::size_t first = 0;
  std::size_t last = 0;
};

/// Solves d_t n + d_x (n d_x theta) = 0 for theta with gauge theta(x_min) = 0:
///   d_x theta = -(1/n) int_{x_min}^x d_t n,   theta = int_{x_min}^x d_x theta.
/// Outside the window where n > n_floor the velocity is set to zero. A point
/// with n <= n_floor strictly between window points throws DensityUnderflow.
PhaseField phase_from_continuity(std::span<const double> n, std::span<const double> dn_dt,
                                 const SpatialGrid& grid, double n_floor = 1e-12);

/// Same on a caller-fixed window [first, last]. Time-differenced phases must
/// share one window, otherwise the gauge jumps when the window edge moves.
PhaseField phase_on_window(std::span<const double> n, std::span<const double> dn_dt,
                           const SpatialGrid& grid, std::size_t first, std::size_t last);

/// (theta_plus - theta_minus) / (2 delta). Both inputs must be in the
/// theta(x_min) = 0 gauge.
std::vector<double> phase_time_derivative(std::span<const double> theta_minus,
                                          std::span<const double> theta_plus, double delta);

/// (-3 theta_0 + 4 theta_1 - theta_2) / (2 delta), for snapshots at t < delta.
std::vector<double> phase_time_derivative_forward(std::span<const double> theta_0,
                                                  std::span<const double> theta_1,
                                                  std::span<const double> theta_2, double delta);

struct FieldSnapshot {
  double t = 0.0;
  SpatialGrid grid;
  TwoLevelDensity rho;
  std::vector<double> n;
  std::vector<double> dn_dx;
  std::vector<double> d2n_dx2;
  std::vector<double> dn_dt;
  std::vector<double> theta;
  std::vector<double> dtheta_dx;
  std::vector<double> dtheta_dt;

  /// True when every field is present with the grid's length.
  bool complete() const noexcept;
};

struct SnapshotOptions {
  double fd_dt = 1e-4;
  double n_floor = 1e-12;
  kernels::Exec exec = kernels::Exec::parallel;
};

/// Evolves rho0 analytically to t and builds every field the potentials need.
FieldSnapshot build_snapshot(const TwoLevelDensity& rho0, const DephasingParams& p,
                             const TwoLevelBasis& basis, double t, const SnapshotOptions& opts = {});

}  // namespace fks
