#include "fks/fractional_kernel.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "fks/error.hpp"
#include "fks/kernels.hpp"
#include "kernel_formulas.hpp"

namespace fks {

namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

// Lanczos series for Gamma(x), x >= 0.5.
double lanczos_gamma(double x) {
  x -= 1.0;
  double a = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) a += kLanczos[i] / (x + static_cast<double>(i));
  const double t = x + kLanczosG + 0.5;
  return std::sqrt(2.0 * M_PI) * std::pow(t, x + 0.5) * std::exp(-t) * a;
}

double lanczos_log_gamma(double x) {
  x -= 1.0;
  double a = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) a += kLanczos[i] / (x + static_cast<double>(i));
  const double t = x + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * M_PI) + (x + 0.5) * std::log(t) - t + std::log(a);
}

// Kahan-compensated accumulator for one real component.
struct Compensated {
  double sum = 0.0;
  double carry = 0.0;

  void add(double v) {
    const double y = v - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

}  // namespace

FracOrder::FracOrder(double alpha) : alpha_(alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw DomainError("fractional order must lie in (0, 1], got " + std::to_string(alpha));
  }
}

std::string_view to_string(PowerBranchMode mode) {
  switch (mode) {
    case PowerBranchMode::signed_power:
      return "signed";
    case PowerBranchMode::principal_real:
      return "principal-real";
    case PowerBranchMode::strict:
      return "strict";
  }
  return "signed";
}

PowerBranchMode branch_from_string(std::string_view name) {
  if (name == "signed") return PowerBranchMode::signed_power;
  if (name == "principal-real") return PowerBranchMode::principal_real;
  if (name == "strict") return PowerBranchMode::strict;
  throw ConfigError("unknown power branch mode '" + std::string(name) + "'");
}

double gamma_fn(double x) {
  if (x <= 0.0 && x == std::floor(x)) {
    throw PoleError("gamma function pole at x = " + std::to_string(x));
  }
  double g;
  if (x < 0.5) {
    g = M_PI / (std::sin(M_PI * x) * lanczos_gamma(1.0 - x));
  } else {
    g = lanczos_gamma(x);
  }
#ifdef FKS_GAMMA_FAULT_SCALE
  g *= FKS_GAMMA_FAULT_SCALE;
#endif
  return g;
}

double log_gamma(double x) {
  if (!(x > 0.0)) throw DomainError("log_gamma requires x > 0");
  if (x < 0.5) return lanczos_log_gamma(x + 1.0) - std::log(x);
  return lanczos_log_gamma(x);
}

cplx mittag_leffler(FracOrder order, cplx u, const MittagLefflerOptions& opts) {
  const double abs_u = std::abs(u);
  if (!(abs_u <= opts.u_max)) {
    throw DomainError("Mittag-Leffler argument |u| = " + std::to_string(abs_u) +
                      " exceeds series cap " + std::to_string(opts.u_max));
  }
  if (abs_u == 0.0) return {1.0, 0.0};

  const double alpha = order.value();
  const double log_abs_u = std::log(abs_u);
  const double arg_u = std::arg(u);

  Compensated re, im;
  re.add(1.0);
  double magnitude_sum = 1.0;
  double prev_mag = 1.0;
  cplx power{1.0, 0.0};
  bool log_form = false;
  bool converged = false;

  for (int k = 1; k <= opts.k_max; ++k) {
    const double garg = alpha * k + 1.0;
    if (!log_form) {
      power *= u;
      if (!std::isfinite(std::abs(power)) || garg > 170.0) log_form = true;
    }
    const cplx term = log_form ? std::polar(std::exp(k * log_abs_u - log_gamma(garg)), k * arg_u)
                               : power / gamma_fn(garg);
    re.add(term.real());
    im.add(term.imag());

    const double mag = std::abs(term);
    magnitude_sum += mag;
    const double sum_mag = std::hypot(re.sum, im.sum);
    if (mag <= prev_mag && mag < opts.rel_tol * sum_mag) {
      converged = true;
      break;
    }
    prev_mag = mag;
  }

  if (!converged) {
    throw ConvergenceError("Mittag-Leffler series did not converge within k_max = " +
                           std::to_string(opts.k_max) + " terms (alpha = " +
                           std::to_string(alpha) + ", |u| = " + std::to_string(abs_u) + ")");
  }
  const cplx sum{re.sum, im.sum};
  const double rounding = std::numeric_limits<double>::epsilon() * magnitude_sum;
  if (rounding > 1e-8 * std::max(1.0, std::abs(sum))) {
    throw ConvergenceError("Mittag-Leffler series lost significance to cancellation (alpha = " +
                           std::to_string(alpha) + ", |u| = " + std::to_string(abs_u) + ")");
  }
  return sum;
}

cplx mittag_leffler_trunc2(FracOrder order, double theta) {
  return {1.0, theta / gamma_fn(1.0 + order.value())};
}

double branch_power(double y, double p, PowerBranchMode mode) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("branch_power exponent must lie in [0, 1]");
  if (mode == PowerBranchMode::strict && y < 0.0) {
    throw DomainError("strict power branch undefined for negative base " + std::to_string(y));
  }
  return detail::branch_power_nothrow(y, p, mode);
}

double frac_power(double y, FracOrder order, PowerBranchMode mode) {
  return branch_power(y, order.value(), mode);
}

SampledFunction rl_frac_derivative(const SampledFunction& f, FracOrder order,
                                   kernels::Exec exec) {
  if (order.is_classical()) {
    throw DomainError("Riemann-Liouville quadrature needs 0 < alpha < 1");
  }
  if (f.size() < 3) throw DomainError("Riemann-Liouville quadrature needs at least 3 samples");
  if (!(f.h > 0.0)) throw DomainError("sample spacing must be positive");

  SampledFunction out{f.h, std::vector<double>(f.size())};
  const double alpha = order.value();
  kernels::rl_l1(f.ys, f.h, alpha, 1.0 / gamma_fn(2.0 - alpha), out.ys, exec);
  return out;
}

double frac_power_rule(double gamma_exp, FracOrder order, double x) {
  if (!(gamma_exp > 0.0)) throw DomainError("power rule requires gamma > 0");
  if (!(x > 0.0)) throw DomainError("power rule requires x > 0");
  const double alpha = order.value();
  return gamma_fn(gamma_exp + 1.0) / gamma_fn(gamma_exp + 1.0 - alpha) *
         std::pow(x, gamma_exp - alpha);
}

double ml_derivative_a8(double lambda, FracOrder order, double x) {
  if (!(x > 0.0)) throw DomainError("ml_derivative_a8 requires x > 0");
  if (lambda == 0.0) return 0.0;
  const double alpha = order.value();
  const cplx e = mittag_leffler(order, cplx{lambda * x, 0.0});
  return lambda * std::pow(alpha, -alpha) * std::pow(x, 1.0 - alpha) * e.real();
}

}  // namespace fks
