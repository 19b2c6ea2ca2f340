#pragma once

// Two-level density matrix under pure dephasing: H_s = diag(E0, E1),
// single Lindblad operator L = sqrt(gamma) diag(1, 0).

#include <complex>

namespace fks {

using cplx = std::complex<double>;

/// rho_mn = <m|rho|n>, m, n in {0, 1}.
struct TwoLevelDensity {
  cplx rho00{1.0, 0.0};
  cplx rho01{0.0, 0.0};
  cplx rho10{0.0, 0.0};
  cplx rho11{0.0, 0.0};

  /// Builds rho from real entries (rho00, rho01, rho10, rho11), as listed in
  /// the initial-density row of the parameter table.
  static TwoLevelDensity from_real(double r00, double r01, double r10, double r11) {
    return {{r00, 0.0}, {r01, 0.0}, {r10, 0.0}, {r11, 0.0}};
  }

  /// Equal superposition (|0> + |1>)/sqrt(2): every entry 1/2.
  static TwoLevelDensity table1() { return from_real(0.5, 0.5, 0.5, 0.5); }

  cplx trace() const noexcept { return rho00 + rho11; }
  double purity() const noexcept;

  /// Throws InvariantViolation unless rho is hermitian, unit-trace and
  /// positive semidefinite to within `tol`.
  void validate(double tol = 1e-12) const;

  TwoLevelDensity& operator+=(const TwoLevelDensity& o) noexcept;
  friend TwoLevelDensity operator+(TwoLevelDensity a, const TwoLevelDensity& b) noexcept {
    return a += b;
  }
  friend TwoLevelDensity operator*(double s, TwoLevelDensity a) noexcept {
    a.rho00 *= s;
    a.rho01 *= s;
    a.rho10 *= s;
    a.rho11 *= s;
    return a;
  }
};

struct DephasingParams {
  double gamma = 0.15;  ///< dephasing rate (a.u.)
  double E0 = 0.5;
  double E1 = 1.5;

  void validate() const;
};

/// d rho / dt = -i[H_s, rho] + 2 L rho L^+ - L^+ L rho - rho L^+ L.
TwoLevelDensity lindblad_rhs(const TwoLevelDensity& rho, const DephasingParams& p);

/// Closed form: populations frozen, rho01(t) = rho01(0) exp(-gamma t + i (E1 - E0) t).
TwoLevelDensity analytic_state(const TwoLevelDensity& rho0, const DephasingParams& p, double t);

/// Classical RK4 integration of lindblad_rhs. Throws InvariantViolation if the
/// trace drifts by more than 1e-9.
TwoLevelDensity propagate_rk4(const TwoLevelDensity& rho0, const DephasingParams& p,
                              double t_end, double dt = 1e-3);

/// 0.5 (gamma_m + gamma_n).
double dephasing_timescale(double gamma_m, double gamma_n);

}  // namespace fks
