#pragma once

// Special functions and fractional-derivative operators shared by the
// space-fractional Kohn-Sham construction.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "fks/exec.hpp"

namespace fks {

using cplx = std::complex<double>;

/// Fractional order alpha in (0, 1]. alpha == 1 is the classical limit.
class FracOrder {
 public:
  explicit FracOrder(double alpha);

  double value() const noexcept { return alpha_; }
  bool is_classical() const noexcept { return alpha_ == 1.0; }

 private:
  double alpha_;
};

/// How y^alpha is continued to y < 0.
enum class PowerBranchMode {
  signed_power,    ///< sign(y) |y|^alpha, odd in y
  principal_real,  ///< Re[(y + i0)^alpha] = |y|^alpha cos(alpha pi) for y < 0
  strict,          ///< y^alpha, DomainError for y < 0
};

std::string_view to_string(PowerBranchMode mode);
PowerBranchMode branch_from_string(std::string_view name);

/// Uniform samples f(x_i) with x_i = i * h starting at the origin.
struct SampledFunction {
  double h = 0.0;
  std::vector<double> ys;

  double x(std::size_t i) const noexcept { return static_cast<double>(i) * h; }
  std::size_t size() const noexcept { return ys.size(); }
};

/// Gamma(x) by Lanczos (g = 7, 9 terms) with reflection below 1/2.
/// Throws PoleError at 0, -1, -2, ...
double gamma_fn(double x);

/// log Gamma(x) for x > 0.
double log_gamma(double x);

struct MittagLefflerOptions {
  double u_max = 30.0;
  int k_max = 500;
  double rel_tol = 1e-15;
};

/// E_alpha(u) = sum_k u^k / Gamma(alpha k + 1), compensated summation.
///
/// Stops once the terms are decreasing and |term| < rel_tol |sum|. Throws
/// DomainError for |u| > u_max, ConvergenceError when k_max is reached or when
/// cancellation between large terms leaves fewer than eight significant digits.
cplx mittag_leffler(FracOrder order, cplx u, const MittagLefflerOptions& opts = {});

/// First two terms of E_alpha(i theta): 1 + i theta / Gamma(1 + alpha).
cplx mittag_leffler_trunc2(FracOrder order, double theta);

/// y^alpha continued to negative y according to `mode`.
double frac_power(double y, FracOrder order, PowerBranchMode mode);

/// Same as frac_power but for any exponent p in [0, 1]; 0^0 is taken as 1.
double branch_power(double y, double p, PowerBranchMode mode);

/// Modified Riemann-Liouville derivative of f - f(0) on a uniform grid anchored at 0.
///
/// The integral int_0^x (x - t)^{-alpha} (f(t) - f(0)) dt is evaluated by product
/// integration with f piecewise linear, and differentiated in x exactly:
///
///   D_j = 1/Gamma(2 - alpha) * sum_{k<j} (f_{k+1} - f_k)/h *
///         [(x_j - x_k)^{1-alpha} - (x_j - x_{k+1})^{1-alpha}]
///
/// Requires 0 < alpha < 1 and at least three samples.
SampledFunction rl_frac_derivative(const SampledFunction& f, FracOrder order,
                                   kernels::Exec exec = kernels::Exec::parallel);

/// Closed-form fractional derivative of x^gamma:
/// Gamma(gamma + 1) / Gamma(gamma + 1 - alpha) * x^(gamma - alpha).
double frac_power_rule(double gamma_exp, FracOrder order, double x);

/// lambda * alpha^{-alpha} * x^{1-alpha} * E_alpha(lambda x), evaluated as written.
double ml_derivative_a8(double lambda, FracOrder order, double x);

}  // namespace fks
