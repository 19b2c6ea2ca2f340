#include "fks/fields.hpp"

#include <cmath>
#include <string>

#include "fks/error.hpp"

namespace fks {

namespace {

constexpr double kGaugeTol = 1e-12;

void require_gauge(std::span<const double> theta, const char* which) {
  if (theta.empty() || std::abs(theta.front()) > kGaugeTol) {
    throw GaugeMismatch(std::string("phase snapshot '") + which + "' is not in the theta(x_min) = 0 gauge");
  }
}

std::vector<double> phase_at(const TwoLevelDensity& rho0, const DephasingParams& p,
                             const TwoLevelBasis& basis, double t, const PhaseField& window) {
  const TwoLevelDensity rho = analytic_state(rho0, p, t);
  const std::vector<double> n = assemble_density(rho, basis);
  const std::vector<double> dn_dt = density_time_derivative(rho, p, basis);
  return phase_on_window(n, dn_dt, basis.grid, window.first, window.last).theta;
}

}  // namespace

std::vector<double> ho_eigenfunction(int level, double omega, double mass, const SpatialGrid& grid) {
  if (!(omega > 0.0) || !(mass > 0.0)) throw DomainError("oscillator needs omega > 0 and mass > 0");
  if (level != 0 && level != 1) throw DomainError("only levels 0 and 1 are available");
  const double mw = mass * omega;
  const double norm = std::pow(mw / M_PI, 0.25);
  const double lift = std::sqrt(2.0 * mw);
  std::vector<double> phi(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid.x(i);
    const double g = norm * std::exp(-0.5 * mw * x * x);
    phi[i] = level == 0 ? g : lift * x * g;
  }
  return phi;
}

TwoLevelBasis TwoLevelBasis::harmonic(const SpatialGrid& grid, double omega, double mass) {
  TwoLevelBasis b;
  b.grid = grid;
  b.omega = omega;
  b.mass = mass;
  b.phi0 = ho_eigenfunction(0, omega, mass, grid);
  b.phi1 = ho_eigenfunction(1, omega, mass, grid);
  b.E0 = 0.5 * omega;
  b.E1 = 1.5 * omega;
  return b;
}

std::vector<double> assemble_density(const TwoLevelDensity& rho, const TwoLevelBasis& basis) {
  const double p00 = rho.rho00.real();
  const double p11 = rho.rho11.real();
  const double coh = (rho.rho01 + rho.rho10).real();
  std::vector<double> n(basis.grid.size());
  for (std::size_t i = 0; i < n.size(); ++i) {
    const double a = basis.phi0[i];
    const double b = basis.phi1[i];
    const double v = p00 * a * a + p11 * b * b + coh * a * b;
    if (v < -1e-12) {
      throw InvariantViolation("negative density " + std::to_string(v) + " at x = " +
                               std::to_string(basis.grid.x(i)));
    }
    n[i] = v < 0.0 ? 0.0 : v;
  }
  return n;
}

std::vector<double> density_time_derivative(const TwoLevelDensity& rho, const DephasingParams& p,
                                            const TwoLevelBasis& basis) {
  const TwoLevelDensity d = lindblad_rhs(rho, p);
  const double p00 = d.rho00.real();
  const double p11 = d.rho11.real();
  const double coh = (d.rho01 + d.rho10).real();
  std::vector<double> dn(basis.grid.size());
  for (std::size_t i = 0; i < dn.size(); ++i) {
    const double a = basis.phi0[i];
    const double b = basis.phi1[i];
    dn[i] = p00 * a * a + p11 * b * b + coh * a * b;
  }
  return dn;
}

PhaseField phase_from_continuity(std::span<const double> n, std::span<const double> dn_dt,
                                 const SpatialGrid& grid, double n_floor) {
  const std::size_t size = grid.size();
  if (n.size() != size || dn_dt.size() != size) throw GridMismatch("phase inputs do not match grid");

  std::size_t first = size;
  std::size_t last = 0;
  for (std::size_t i = 0; i < size; ++i) {
    if (n[i] > n_floor) {
      if (first == size) first = i;
      last = i;
    }
  }
  if (first == size) throw DensityUnderflow("density below floor on the whole grid");
  for (std::size_t i = first; i <= last; ++i) {
    if (!(n[i] > n_floor)) {
      throw DensityUnderflow("density " + std::to_string(n[i]) + " below floor inside window at x = " +
                             std::to_string(grid.x(i)));
    }
  }

  return phase_on_window(n, dn_dt, grid, first, last);
}

PhaseField phase_on_window(std::span<const double> n, std::span<const double> dn_dt,
                           const SpatialGrid& grid, std::size_t first, std::size_t last) {
  const std::size_t size = grid.size();
  if (n.size() != size || dn_dt.size() != size) throw GridMismatch("phase inputs do not match grid");
  if (first > last || last >= size) throw DomainError("phase window outside the grid");
  for (std::size_t i = first; i <= last; ++i) {
    if (!(n[i] > 0.0)) {
      throw DensityUnderflow("density vanishes inside phase window at x = " + std::to_string(grid.x(i)));
    }
  }
  const double h = grid.spacing();
  const std::vector<double> flux = cumulative_trapezoid(dn_dt, h);
  PhaseField out;
  out.first = first;
  out.last = last;
  out.dtheta_dx.assign(size, 0.0);
  for (std::size_t i = first; i <= last; ++i) out.dtheta_dx[i] = -flux[i] / n[i];
  out.theta = cumulative_trapezoid(out.dtheta_dx, h);
  return out;
}

std::vector<double> phase_time_derivative(std::span<const double> theta_minus,
                                          std::span<const double> theta_plus, double delta) {
  if (!(delta > 0.0)) throw DomainError("time step must be positive");
  if (theta_minus.size() != theta_plus.size()) throw GridMismatch("phase snapshots differ in size");
  require_gauge(theta_minus, "t - delta");
  require_gauge(theta_plus, "t + delta");
  std::vector<double> out(theta_plus.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = (theta_plus[i] - theta_minus[i]) / (2.0 * delta);
  return out;
}

std::vector<double> phase_time_derivative_forward(std::span<const double> theta_0,
                                                  std::span<const double> theta_1,
                                                  std::span<const double> theta_2, double delta) {
  if (!(delta > 0.0)) throw DomainError("time step must be positive");
  if (theta_0.size() != theta_1.size() || theta_0.size() != theta_2.size()) {
    throw GridMismatch("phase snapshots differ in size");
  }
  require_gauge(theta_0, "t");
  require_gauge(theta_1, "t + delta");
  require_gauge(theta_2, "t + 2 delta");
  std::vector<double> out(theta_0.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = (-3.0 * theta_0[i] + 4.0 * theta_1[i] - theta_2[i]) / (2.0 * delta);
  }
  return out;
}

bool FieldSnapshot::complete() const noexcept {
  const std::size_t s = grid.size();
  return n.size() == s && dn_dx.size() == s && d2n_dx2.size() == s && dn_dt.size() == s &&
         theta.size() == s && dtheta_dx.size() == s && dtheta_dt.size() == s;
}

FieldSnapshot build_snapshot(const TwoLevelDensity& rho0, const DephasingParams& p,
                             const TwoLevelBasis& basis, double t, const SnapshotOptions& opts) {
  if (!(t >= 0.0)) throw DomainError("snapshot time must be non-negative");
  FieldSnapshot s;
  s.t = t;
  s.grid = basis.grid;
  s.rho = analytic_state(rho0, p, t);
  s.n = assemble_density(s.rho, basis);
  s.dn_dt = density_time_derivative(s.rho, p, basis);

  PhaseField phase = phase_from_continuity(s.n, s.dn_dt, basis.grid, opts.n_floor);
  s.theta = phase.theta;
  s.dtheta_dx = phase.dtheta_dx;

  Derivatives dn = spatial_derivatives(s.n, basis.grid, opts.exec);
  s.dn_dx = std::move(dn.d1);
  s.d2n_dx2 = std::move(dn.d2);

  const double delta = opts.fd_dt;
  if (t >= delta) {
    s.dtheta_dt = phase_time_derivative(phase_at(rho0, p, basis, t - delta, phase),
                                        phase_at(rho0, p, basis, t + delta, phase), delta);
  } else {
    s.dtheta_dt = phase_time_derivative_forward(s.theta, phase_at(rho0, p, basis, t + delta, phase),
                                                phase_at(rho0, p, basis, t + 2.0 * delta, phase),
                                                delta);
  }
  return s;
}

}  // namespace fks
