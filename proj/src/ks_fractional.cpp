#include "fks/ks_fractional.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "fks/error.hpp"
#include "fks/kernels.hpp"
#include "kernel_formulas.hpp"

namespace fks {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
const cplx kI{0.0, 1.0};

double density_coefficient(double alpha) { return gamma_fn(1.5) / gamma_fn(1.5 - alpha); }

void require_fields(const FieldSnapshot& s, bool need_phase_slope) {
  const std::size_t g = s.grid.size();
  if (s.n.size() != g || s.theta.size() != g || s.dn_dx.size() != g ||
      (need_phase_slope && s.dtheta_dx.size() != g)) {
    throw MissingField("fractional operation needs n, theta and their slopes");
  }
}

}  // namespace

void FracConfig::validate() const {
  if (repair_max_run < 1) throw ConfigError("repair_max_run must be >= 1");
}

KsOrbital frac_orbital_trunc(const FieldSnapshot& snap, const FracConfig& cfg) {
  KsOrbital phi{snap.t, snap.grid, std::vector<cplx>(snap.n.size())};
  for (std::size_t i = 0; i < phi.values.size(); ++i) {
    if (snap.n[i] < 0.0) throw DomainError("negative density in fractional orbital");
    phi.values[i] = std::sqrt(snap.n[i]) * mittag_leffler_trunc2(cfg.order, snap.theta[i]);
  }
  return phi;
}

KsOrbital frac_orbital_full(const FieldSnapshot& snap, const FracConfig& cfg) {
  KsOrbital phi{snap.t, snap.grid, std::vector<cplx>(snap.n.size())};
  for (std::size_t i = 0; i < phi.values.size(); ++i) {
    phi.values[i] = std::sqrt(snap.n[i]) * mittag_leffler(cfg.order, cplx{0.0, snap.theta[i]});
  }
  return phi;
}

std::vector<cplx> frac_partial_density(const FieldSnapshot& snap, const FracConfig& cfg,
                                       double window) {
  require_fields(snap, false);
  const double alpha = cfg.order.value();
  const double coeff = density_coefficient(alpha);
  std::vector<cplx> out(snap.n.size(), cplx{kNaN, kNaN});
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double n = snap.n[i];
    if (!(n > window)) continue;
    out[i] = mittag_leffler(cfg.order, cplx{0.0, snap.theta[i]}) * coeff * std::pow(n, 0.5 - alpha);
  }
  return out;
}

std::vector<cplx> frac_partial_phase(const FieldSnapshot& snap, const FracConfig& cfg) {
  require_fields(snap, false);
  const double alpha = cfg.order.value();
  const double scale = std::pow(alpha, -alpha);
  std::vector<cplx> out(snap.n.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double th = snap.theta[i];
    const double p = detail::branch_power_nothrow(th, 1.0 - alpha, cfg.branch);
    out[i] = kI * std::sqrt(snap.n[i]) * scale * p * mittag_leffler(cfg.order, cplx{0.0, th});
  }
  return out;
}

std::vector<cplx> frac_spatial_derivative(const FieldSnapshot& snap, const FracConfig& cfg,
                                          double window) {
  require_fields(snap, true);
  const double alpha = cfg.order.value();
  const std::vector<cplx> by_density = frac_partial_density(snap, cfg, window);
  const std::vector<cplx> by_phase = frac_partial_phase(snap, cfg);
  std::vector<cplx> out(by_density.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double nx = detail::branch_power_nothrow(snap.dn_dx[i], alpha, cfg.branch);
    const double tx = detail::branch_power_nothrow(snap.dtheta_dx[i], alpha, cfg.branch);
    out[i] = by_density[i] * nx + by_phase[i] * tx;
  }
  return out;
}

PotentialField frac_correlation_potential(const FieldSnapshot& snap, const PotentialField& v_ext,
                                          const FracConfig& cfg, double window, kernels::Exec exec) {
  if (!snap.complete()) throw MissingField("snapshot is missing a field or derivative");
  if (!(v_ext.grid == snap.grid)) throw GridMismatch("external potential grid differs from snapshot");
  bool any = false;
  for (double v : snap.n) any = any || v > window;
  if (!any) throw DensityUnderflow("density is below the evaluation window everywhere");

  const double alpha = cfg.order.value();
  const kernels::FracCorrelationCoeffs coeffs{alpha, gamma_fn(1.0 + alpha),
                                              density_coefficient(alpha), cfg.branch};
  const kernels::CorrelationInputs in{snap.n,         snap.dn_dx,     snap.d2n_dx2,  snap.theta,
                                      snap.dtheta_dx, snap.dtheta_dt, v_ext.values};
  std::vector<double> out(snap.grid.size());
  kernels::frac_correlation(in, coeffs, window, out, exec);

  PotentialField field = PotentialField::from_values(snap.t, snap.grid, std::move(out));
  field.mask_outside(snap.n, window);
  return field;
}

PotentialField frac_ks_potential(const PotentialField& v_c_frac, const PotentialField& v_ext) {
  return ks_potential_total(v_c_frac, v_ext);
}

PotentialField singularity_repair(const PotentialField& field, const FracConfig& cfg,
                                  RepairReport* report) {
  cfg.validate();
  PotentialField out = field;
  RepairReport local;
  const std::size_t n = out.values.size();
  const auto max_run = static_cast<std::size_t>(cfg.repair_max_run);
  const auto finite = [&](std::size_t i) { return std::isfinite(field.values[i]); };

  std::size_t i = 0;
  while (i < n) {
    if (finite(i)) {
      ++i;
      continue;
    }
    std::size_t end = i;
    bool all_masked = true;
    while (end < n && !finite(end)) {
      all_masked = all_masked && field.flags[end] == SampleFlag::masked;
      ++end;
    }
    const bool has_left = i > 0;
    const bool has_right = end < n;
    if (!has_left && !has_right) {
      throw UnrepairableSingularity("potential has no finite sample", field.grid.x(0),
                                    field.grid.x(n - 1), n);
    }
    const bool edge_tail = all_masked && (!has_left || !has_right);
    const std::size_t run = end - i;
    if (!edge_tail && run > max_run) {
      throw UnrepairableSingularity(
          "run of " + std::to_string(run) + " non-finite samples on x in [" +
              std::to_string(field.grid.x(i)) + ", " + std::to_string(field.grid.x(end - 1)) +
              "] exceeds repair limit " + std::to_string(max_run),
          field.grid.x(i), field.grid.x(end - 1), run);
    }
    double fill;
    if (has_left && has_right) {
      fill = 0.5 * (field.values[i - 1] + field.values[end]);
    } else {
      fill = has_left ? field.values[i - 1] : field.values[end];
    }
    for (std::size_t k = i; k < end; ++k) {
      out.values[k] = fill;
      if (edge_tail) {
        out.flags[k] = SampleFlag::masked;
        ++local.held;
      } else {
        out.flags[k] = SampleFlag::repaired;
        ++local.repaired;
      }
    }
    i = end;
  }
  if (report != nullptr) *report = local;
  return out;
}

}  // namespace fks
