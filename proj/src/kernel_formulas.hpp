#pragma once

// Per-element arithmetic shared by the serial and OpenMP kernels. Keeping a
// single definition is what makes the two paths bitwise identical.

#include <cmath>
#include <limits>

#include "fks/kernels.hpp"

namespace fks::detail {

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// y^p continued per `mode`; strict mode yields NaN for y < 0.
inline double branch_power_nothrow(double y, double p, PowerBranchMode mode) noexcept {
  if (y == 0.0) return p == 0.0 ? 1.0 : 0.0;
  if (y > 0.0) return std::pow(y, p);
  const double mag = std::pow(-y, p);
  switch (mode) {
    case PowerBranchMode::signed_power:
      return -mag;
    case PowerBranchMode::principal_real:
      return mag * std::cos(p * M_PI);
    case PowerBranchMode::strict:
      return kNaN;
  }
  return kNaN;
}

inline double exact_correlation_at(const kernels::CorrelationInputs& in, std::size_t i,
                                   double floor) noexcept {
  const double n = in.n[i];
  if (!(n > floor)) return kNaN;
  const double dn = in.dn_dx[i];
  const double tx = in.dtheta_dx[i];
  return -in.dtheta_dt[i] + in.d2n_dx2[i] / (4.0 * n) - dn * dn / (8.0 * n * n) -
         0.5 * tx * tx - in.v_ext[i];
}

inline double frac_correlation_at(const kernels::CorrelationInputs& in,
                                  const kernels::FracCorrelationCoeffs& c, std::size_t i,
                                  double floor) noexcept {
  const double n = in.n[i];
  if (!(n > floor)) return kNaN;
  const double th = in.theta[i];
  const double g = c.gamma_1pa;
  const double phase_term = -in.dtheta_dt[i] * (g / (g * g + th * th));
  const double slope = branch_power_nothrow(in.dn_dx[i], c.alpha, c.branch);
  const double density_term =
      (1.0 / (2.0 * std::sqrt(n))) * c.density_coeff * std::pow(n, 0.5 - c.alpha) * slope;
  return phase_term + density_term - in.v_ext[i];
}

/// b_m = m^{1-alpha} - (m-1)^{1-alpha}, m = 1..count-1 (b_0 unused).
inline void l1_weights(double alpha, std::size_t count, double* b) noexcept {
  const double p = 1.0 - alpha;
  b[0] = 0.0;
  for (std::size_t m = 1; m < count; ++m) {
    b[m] = std::pow(static_cast<double>(m), p) - std::pow(static_cast<double>(m - 1), p);
  }
}

inline double l1_point(const double* df, const double* b, std::size_t j) noexcept {
  double sum = 0.0;
  for (std::size_t k = 0; k < j; ++k) sum += df[k] * b[j - k];
  return sum;
}

inline void edge_derivatives(const double* f, std::size_t n, double h, double* d1,
                             double* d2) noexcept {
  const double h2 = h * h;
  d1[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
  d2[0] = (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) / h2;
  d1[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h);
  d2[n - 1] = (2.0 * f[n - 1] - 5.0 * f[n - 2] + 4.0 * f[n - 3] - f[n - 4]) / h2;
  d1[1] = (f[2] - f[0]) / (2.0 * h);
  d2[1] = (f[2] - 2.0 * f[1] + f[0]) / h2;
  d1[n - 2] = (f[n - 1] - f[n - 3]) / (2.0 * h);
  d2[n - 2] = (f[n - 1] - 2.0 * f[n - 2] + f[n - 3]) / h2;
}

inline void centre_derivatives(const double* f, std::size_t i, double h, double* d1,
                               double* d2) noexcept {
  d1[i] = (-f[i + 2] + 8.0 * f[i + 1] - 8.0 * f[i - 1] + f[i - 2]) / (12.0 * h);
  d2[i] = (-f[i + 2] + 16.0 * f[i + 1] - 30.0 * f[i] + 16.0 * f[i - 1] - f[i - 2]) /
          (12.0 * h * h);
}

}  // namespace fks::detail
