#pragma once

// Data-parallel inner loops. Every kernel has a serial reference
// (kernels_serial.cpp) and an OpenMP version (kernels_omp.cpp); the public
// entry points below dispatch on Exec.

#include <cstddef>
#include <span>

#include "fks/exec.hpp"
#include "fks/fractional_kernel.hpp"

namespace fks::kernels {

/// out_j = scale * h^{-alpha} * sum_{k<j} (f_{k+1} - f_k) * b_{j-k},
/// b_m = m^{1-alpha} - (m-1)^{1-alpha}. out_0 = 0.
void rl_l1(std::span<const double> f, double h, double alpha, double scale,
           std::span<double> out, Exec exec);

/// First and second derivatives: 5-point 4th-order centre, 3-point next to
/// the edges, one-sided 2nd-order at the edges. Requires f.size() >= 5.
void derivatives(std::span<const double> f, double h, std::span<double> d1,
                 std::span<double> d2, Exec exec);

struct CorrelationInputs {
  std::span<const double> n;
  std::span<const double> dn_dx;
  std::span<const double> d2n_dx2;
  std::span<const double> theta;
  std::span<const double> dtheta_dx;
  std::span<const double> dtheta_dt;
  std::span<const double> v_ext;
};

/// V_c = -d_t theta + n''/(4n) - n'^2/(8n^2) - (theta')^2/2 - V_ext where
/// n > window_floor, NaN elsewhere.
void exact_correlation(const CorrelationInputs& in, double window_floor,
                       std::span<double> out, Exec exec);

struct FracCorrelationCoeffs {
  double alpha = 0.3;
  double gamma_1pa = 1.0;       ///< Gamma(1 + alpha)
  double density_coeff = 1.0;   ///< Gamma(3/2) / Gamma(3/2 - alpha)
  PowerBranchMode branch = PowerBranchMode::signed_power;
};

/// Fractional correlation potential, pointwise. Points with n <= window_floor
/// or an undefined (strict-branch) power are NaN.
void frac_correlation(const CorrelationInputs& in, const FracCorrelationCoeffs& c,
                      double window_floor, std::span<double> out, Exec exec);

namespace serial {
void rl_l1(std::span<const double> f, double h, double alpha, double scale, std::span<double> out);
void derivatives(std::span<const double> f, double h, std::span<double> d1, std::span<double> d2);
void exact_correlation(const CorrelationInputs& in, double window_floor, std::span<double> out);
void frac_correlation(const CorrelationInputs& in, const FracCorrelationCoeffs& c,
                      double window_floor, std::span<double> out);
}  // namespace serial

namespace omp {
void rl_l1(std::span<const double> f, double h, double alpha, double scale, std::span<double> out);
void derivatives(std::span<const double> f, double h, std::span<double> d1, std::span<double> d2);
void exact_correlation(const CorrelationInputs& in, double window_floor, std::span<double> out);
void frac_correlation(const CorrelationInputs& in, const FracCorrelationCoeffs& c,
                      double window_floor, std::span<double> out);
}  // namespace omp

}  // namespace fks::kernels
