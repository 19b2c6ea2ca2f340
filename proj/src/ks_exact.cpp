#include "fks/ks_exact.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "fks/error.hpp"
#include "fks/kernels.hpp"

namespace fks {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_complete(const FieldSnapshot& snap) {
  if (!snap.complete()) throw MissingField("snapshot is missing a field or derivative");
}

void require_some_window(std::span<const double> n, double window) {
  for (double v : n) {
    if (v > window) return;
  }
  throw DensityUnderflow("density is below the evaluation window everywhere");
}

void require_same_frame(const PotentialField& a, const PotentialField& b) {
  if (!(a.grid == b.grid) || a.values.size() != b.values.size()) {
    throw GridMismatch("potential fields live on different grids");
  }
  if (a.t != b.t) throw GridMismatch("potential fields are sampled at different times");
}

}  // namespace

KsOrbital orbital_from_fields(const FieldSnapshot& snap) {
  if (snap.n.size() != snap.grid.size() || snap.theta.size() != snap.grid.size()) {
    throw MissingField("orbital needs n and theta");
  }
  KsOrbital phi{snap.t, snap.grid, std::vector<cplx>(snap.grid.size())};
  for (std::size_t i = 0; i < phi.values.size(); ++i) {
    phi.values[i] = std::polar(std::sqrt(snap.n[i]), snap.theta[i]);
  }
  return phi;
}

PotentialField exact_correlation_potential(const FieldSnapshot& snap, const PotentialField& v_ext,
                                           double window, kernels::Exec exec) {
  require_complete(snap);
  if (!(v_ext.grid == snap.grid)) throw GridMismatch("external potential grid differs from snapshot");
  require_some_window(snap.n, window);

  std::vector<double> out(snap.grid.size());
  const kernels::CorrelationInputs in{snap.n,         snap.dn_dx,     snap.d2n_dx2,  snap.theta,
                                      snap.dtheta_dx, snap.dtheta_dt, v_ext.values};
  kernels::exact_correlation(in, window, out, exec);

  PotentialField field = PotentialField::from_values(snap.t, snap.grid, std::move(out));
  field.mask_outside(snap.n, window);
  return field;
}

PotentialField ks_potential_total(const PotentialField& v_c, const PotentialField& v_ext) {
  require_same_frame(v_c, v_ext);
  PotentialField out = v_c;
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    out.values[i] = v_ext.values[i] + v_c.values[i];
    if (v_ext.flags[i] == SampleFlag::masked) out.flags[i] = SampleFlag::masked;
  }
  return out;
}

std::vector<cplx> complex_second_derivative(const std::vector<cplx>& f, const SpatialGrid& grid) {
  std::vector<double> re(f.size()), im(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    re[i] = f[i].real();
    im[i] = f[i].imag();
  }
  const Derivatives dr = spatial_derivatives(re, grid);
  const Derivatives di = spatial_derivatives(im, grid);
  std::vector<cplx> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = {dr.d2[i], di.d2[i]};
  return out;
}

double tdse_residual(const KsOrbital& before, const KsOrbital& now, const KsOrbital& after,
                     const PotentialField& v_ks, double dt_fd, double window) {
  if (!(dt_fd > 0.0)) throw DomainError("residual time step must be positive");
  if (!(before.grid == now.grid) || !(after.grid == now.grid) || !(v_ks.grid == now.grid)) {
    throw GridMismatch("orbital snapshots and potential must share one grid");
  }
  const double ref = std::arg(now.values.front());
  for (const KsOrbital* o : {&before, &after}) {
    if (std::abs(std::arg(o->values.front()) - ref) > 1e-9) {
      throw GaugeMismatch("orbital snapshots use different phase gauges");
    }
  }

  const std::vector<cplx> dxx = complex_second_derivative(now.values, now.grid);
  const cplx i_unit{0.0, 1.0};
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < now.values.size(); ++i) {
    const cplx phi = now.values[i];
    if (!(std::norm(phi) > window)) continue;
    const cplx dt = (after.values[i] - before.values[i]) / (2.0 * dt_fd);
    const cplx r = i_unit * dt - v_ks.values[i] * phi + 0.5 * dxx[i];
    num += std::norm(r);
    den += std::norm(phi);
  }
  if (den == 0.0) throw DensityUnderflow("no grid point inside the residual window");
  return std::sqrt(num / den);
}

std::vector<cplx> orbital_dxx_chain_rule(const FieldSnapshot& snap, double window) {
  require_complete(snap);
  const Derivatives dtheta = spatial_derivatives(snap.dtheta_dx, snap.grid);
  const cplx i_unit{0.0, 1.0};
  std::vector<cplx> out(snap.grid.size(), cplx{kNaN, kNaN});
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double n = snap.n[i];
    if (!(n > window)) continue;
    const double sn = std::sqrt(n);
    const cplx e = std::polar(1.0, snap.theta[i]);
    const cplx phi = sn * e;
    const cplx phi_n = e / (2.0 * sn);
    const cplx phi_theta = i_unit * phi;
    const cplx phi_nn = -e / (4.0 * n * sn);
    const cplx phi_ntheta = i_unit * e / (2.0 * sn);
    const cplx phi_thetatheta = -phi;
    const double nx = snap.dn_dx[i];
    const double tx = snap.dtheta_dx[i];
    out[i] = phi_n * snap.d2n_dx2[i] + phi_theta * dtheta.d1[i] + phi_nn * (nx * nx) +
             2.0 * phi_ntheta * (tx * nx) + phi_thetatheta * (tx * tx);
  }
  return out;
}

std::vector<cplx> orbital_dt_chain_rule(const FieldSnapshot& snap, double window) {
  require_complete(snap);
  const cplx i_unit{0.0, 1.0};
  std::vector<cplx> out(snap.grid.size(), cplx{kNaN, kNaN});
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double n = snap.n[i];
    if (!(n > window)) continue;
    const double sn = std::sqrt(n);
    const cplx e = std::polar(1.0, snap.theta[i]);
    out[i] = i_unit * sn * e * snap.dtheta_dt[i] + e / (2.0 * sn) * snap.dn_dt[i];
  }
  return out;
}

}  // namespace fks
