#include "fks/lindblad.hpp"

#include <array>
#include <cmath>
#include <string>

#include "fks/error.hpp"

namespace fks {

namespace {

using Mat2 = std::array<cplx, 4>;  // row-major: 00, 01, 10, 11

Mat2 as_matrix(const TwoLevelDensity& r) { return {r.rho00, r.rho01, r.rho10, r.rho11}; }

TwoLevelDensity as_density(const Mat2& m) { return {m[0], m[1], m[2], m[3]}; }

Mat2 mul(const Mat2& a, const Mat2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
          a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

Mat2 adjoint(const Mat2& a) {
  return {std::conj(a[0]), std::conj(a[2]), std::conj(a[1]), std::conj(a[3])};
}

}  // namespace

double TwoLevelDensity::purity() const noexcept {
  const Mat2 m = as_matrix(*this);
  const Mat2 sq = mul(m, m);
  return (sq[0] + sq[3]).real();
}

void TwoLevelDensity::validate(double tol) const {
  if (std::abs(rho10 - std::conj(rho01)) > tol || std::abs(rho00.imag()) > tol ||
      std::abs(rho11.imag()) > tol) {
    throw InvariantViolation("density matrix is not hermitian");
  }
  if (std::abs(trace() - cplx{1.0, 0.0}) > tol) {
    throw InvariantViolation("density matrix trace is " + std::to_string(trace().real()));
  }
  if (rho00.real() < -tol || rho11.real() < -tol ||
      std::norm(rho01) > rho00.real() * rho11.real() + tol) {
    throw InvariantViolation("density matrix is not positive semidefinite");
  }
}

TwoLevelDensity& TwoLevelDensity::operator+=(const TwoLevelDensity& o) noexcept {
  rho00 += o.rho00;
  rho01 += o.rho01;
  rho10 += o.rho10;
  rho11 += o.rho11;
  return *this;
}

void DephasingParams::validate() const {
  if (!(gamma >= 0.0)) throw DomainError("dephasing rate must be non-negative");
  if (!(E1 >= E0)) throw DomainError("level energies must satisfy E1 >= E0");
}

TwoLevelDensity lindblad_rhs(const TwoLevelDensity& rho, const DephasingParams& p) {
  const Mat2 r = as_matrix(rho);
  const Mat2 h = {cplx{p.E0, 0.0}, 0.0, 0.0, cplx{p.E1, 0.0}};
  const double s = std::sqrt(p.gamma);
  const Mat2 l = {cplx{s, 0.0}, 0.0, 0.0, 0.0};
  const Mat2 ld = adjoint(l);
  const Mat2 ldl = mul(ld, l);

  const Mat2 hr = mul(h, r);
  const Mat2 rh = mul(r, h);
  const Mat2 lrl = mul(mul(l, r), ld);
  const Mat2 ldlr = mul(ldl, r);
  const Mat2 rldl = mul(r, ldl);

  const cplx minus_i{0.0, -1.0};
  Mat2 out;
  for (std::size_t k = 0; k < 4; ++k) {
    out[k] = minus_i * (hr[k] - rh[k]) + 2.0 * lrl[k] - ldlr[k] - rldl[k];
  }
  return as_density(out);
}

TwoLevelDensity analytic_state(const TwoLevelDensity& rho0, const DephasingParams& p, double t) {
  if (!(t >= 0.0)) throw DomainError("analytic_state requires t >= 0");
  const cplx decay = std::exp(cplx{-p.gamma * t, (p.E1 - p.E0) * t});
  TwoLevelDensity out = rho0;
  out.rho01 = rho0.rho01 * decay;
  out.rho10 = rho0.rho10 * std::conj(decay);
  return out;
}

TwoLevelDensity propagate_rk4(const TwoLevelDensity& rho0, const DephasingParams& p,
                              double t_end, double dt) {
  if (!(dt > 0.0)) throw DomainError("RK4 step must be positive");
  if (!(t_end >= 0.0)) throw DomainError("RK4 end time must be non-negative");
  if (t_end == 0.0) return rho0;

  const auto steps = static_cast<long>(std::ceil(t_end / dt - 1e-12));
  const double step = t_end / static_cast<double>(steps);
  const cplx trace0 = rho0.trace();

  TwoLevelDensity rho = rho0;
  for (long i = 0; i < steps; ++i) {
    const TwoLevelDensity k1 = lindblad_rhs(rho, p);
    const TwoLevelDensity k2 = lindblad_rhs(rho + (0.5 * step) * k1, p);
    const TwoLevelDensity k3 = lindblad_rhs(rho + (0.5 * step) * k2, p);
    const TwoLevelDensity k4 = lindblad_rhs(rho + step * k3, p);
    rho += (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (std::abs(rho.trace() - trace0) > 1e-9) {
      throw InvariantViolation("RK4 trace drift exceeded 1e-9 at step " + std::to_string(i));
    }
  }
  return rho;
}

double dephasing_timescale(double gamma_m, double gamma_n) {
  if (!(gamma_m >= 0.0 && gamma_n >= 0.0)) throw DomainError("dephasing rates must be non-negative");
  return 0.5 * (gamma_m + gamma_n);
}

}  // namespace fks
