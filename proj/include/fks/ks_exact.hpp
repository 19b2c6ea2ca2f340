#pragma once

// Exact (integer-order) correlation and Kohn-Sham potentials of the
// one-orbital system phi = sqrt(n) exp(i theta), and checks of the
// evolution equation i d_t phi = V_KS phi - (1/2) d_xx phi.

#include <complex>
#include <vector>

#include "fks/exec.hpp"
#include "fks/external_potential.hpp"
#include "fks/fields.hpp"

namespace fks {

using cplx = std::complex<double>;

/// Potentials divide by n and n^2; they are evaluated only where n exceeds this.
inline constexpr double kPotentialWindow = 1e-8;
/// Window used by residual and continuity checks.
inline constexpr double kResidualWindow = 1e-6;

struct KsOrbital {
  double t = 0.0;
  SpatialGrid grid;
  std::vector<cplx> values;
};

/// sqrt(n) exp(i theta); |phi|^2 = n by construction.
KsOrbital orbital_from_fields(const FieldSnapshot& snap);

/// V_c = -d_t theta + n''/(4n) - (n')^2/(8 n^2) - (theta')^2/2 - V_ext.
/// Samples with n <= window are NaN and flagged masked.
PotentialField exact_correlation_potential(const FieldSnapshot& snap, const PotentialField& v_ext,
                                           double window = kPotentialWindow,
                                           kernels::Exec exec = kernels::Exec::parallel);

/// V_KS = V_ext + V_c. Throws GridMismatch for different grids or times.
PotentialField ks_potential_total(const PotentialField& v_c, const PotentialField& v_ext);

/// || i (phi_+ - phi_-)/(2 dt) - V_KS phi + (1/2) d_xx phi ||_2 / || phi ||_2 over the
/// points where |phi|^2 > window. d_xx uses the 5-point stencil.
double tdse_residual(const KsOrbital& before, const KsOrbital& now, const KsOrbital& after,
                     const PotentialField& v_ks, double dt_fd, double window = kResidualWindow);

/// d_xx phi assembled from the chain-rule expansion in (n, theta):
/// phi_n n'' + phi_theta theta'' + phi_nn (n')^2 + 2 phi_ntheta theta' n' + phi_thetatheta (theta')^2.
/// NaN where n <= window.
std::vector<cplx> orbital_dxx_chain_rule(const FieldSnapshot& snap, double window = kPotentialWindow);

/// d_t phi = phi_theta d_t theta + phi_n d_t n. NaN where n <= window.
std::vector<cplx> orbital_dt_chain_rule(const FieldSnapshot& snap, double window = kPotentialWindow);

/// Complex 5-point second derivative (real and imaginary parts independently).
std::vector<cplx> complex_second_derivative(const std::vector<cplx>& f, const SpatialGrid& grid);

}  // namespace fks
