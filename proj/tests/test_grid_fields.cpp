#include <gtest/gtest.h>

#include <cmath>

#include "fks/error.hpp"
#include "fks/fields.hpp"
#include "fks/grid.hpp"
#include "gen.hpp"

using namespace fks;

TEST(Grid, DefaultsAndGeometry) {
  const SpatialGrid g;
  EXPECT_EQ(g.size(), 801u);
  EXPECT_DOUBLE_EQ(g.spacing(), 0.02);
  EXPECT_EQ(g.x(g.centre_index()), 0.0);
  EXPECT_EQ(g.x(0), -8.0);
  EXPECT_DOUBLE_EQ(g.x(800), 8.0);
  const SpatialGrid f = g.refined();
  EXPECT_EQ(f.size(), 1601u);
  EXPECT_DOUBLE_EQ(f.spacing(), 0.01);
  EXPECT_FALSE(f == g);
}

TEST(Grid, Validation) {
  EXPECT_THROW(SpatialGrid(-1.0, 1.0, 10), DomainError);
  EXPECT_THROW(SpatialGrid(-1.0, 1.0, 1), DomainError);
  EXPECT_THROW(SpatialGrid(0.0, 1.0, 11), DomainError);
  EXPECT_THROW(SpatialGrid(-1.0, -0.5, 11), DomainError);
}

TEST(Grid, QuadratureExactForLinear) {
  const SpatialGrid g(-1.0, 3.0, 41);
  std::vector<double> f(g.size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = 2.0 * g.x(i) + 1.0;
  EXPECT_NEAR(trapezoid(f, g.spacing()), 12.0, 1e-12);
  const auto c = cumulative_trapezoid(f, g.spacing());
  EXPECT_EQ(c.front(), 0.0);
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double x = g.x(i);
    EXPECT_NEAR(c[i], (x * x + x) - (1.0 - 1.0), 1e-12);
  }
}

TEST(Grid, SpatialDerivativeSizeMismatchThrows) {
  const SpatialGrid g(-1.0, 1.0, 11);
  EXPECT_THROW(spatial_derivatives(std::vector<double>(9), g), GridMismatch);
}

TEST(Basis, OrthonormalAndEnergies) {
  const SpatialGrid g;
  for (double w : {0.5, 1.0, 2.0}) {
    const TwoLevelBasis b = TwoLevelBasis::harmonic(g, w, 1.0);
    std::vector<double> p00(g.size()), p11(g.size()), p01(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
      p00[i] = b.phi0[i] * b.phi0[i];
      p11[i] = b.phi1[i] * b.phi1[i];
      p01[i] = b.phi0[i] * b.phi1[i];
    }
    EXPECT_NEAR(trapezoid(p00, g.spacing()), 1.0, 1e-12);
    EXPECT_NEAR(trapezoid(p11, g.spacing()), 1.0, 1e-12);
    EXPECT_NEAR(trapezoid(p01, g.spacing()), 0.0, 1e-14);
    EXPECT_DOUBLE_EQ(b.E0, 0.5 * w);
    EXPECT_DOUBLE_EQ(b.E1, 1.5 * w);
  }
}

TEST(Basis, EigenfunctionValues) {
  const SpatialGrid g;
  const auto phi0 = ho_eigenfunction(0, 1.0, 1.0, g);
  const auto phi1 = ho_eigenfunction(1, 1.0, 1.0, g);
  const std::size_t i = 350;  // x = -1
  ASSERT_NEAR(g.x(i), -1.0, 1e-12);
  EXPECT_NEAR(phi0[i] * phi0[i], 0.20755374871029735, 1e-15);
  EXPECT_NEAR(phi1[i], std::sqrt(2.0) * -1.0 * phi0[i], 1e-15);
  EXPECT_THROW(ho_eigenfunction(2, 1.0, 1.0, g), DomainError);
  EXPECT_THROW(ho_eigenfunction(0, 0.0, 1.0, g), DomainError);
}

TEST(Density, NormalisedAndNonNegativeForRandomStates) {
  test::Gen gen(41);
  const SpatialGrid g;
  const TwoLevelBasis b = TwoLevelBasis::harmonic(g);
  for (int c = 0; c < 50; ++c) {
    const double p = gen.uniform(0.0, 1.0);
    const double r = gen.uniform(0.0, std::sqrt(p * (1.0 - p)));
    const double t = gen.uniform(0.0, 20.0);
    const auto rho = analytic_state(TwoLevelDensity::from_real(p, r, r, 1.0 - p), b.dephasing(0.15), t);
    const auto n = assemble_density(rho, b);
    EXPECT_NEAR(trapezoid(n, g.spacing()), 1.0, 1e-12);
    for (double v : n) EXPECT_GE(v, 0.0);
  }
}

TEST(Density, TimeDerivativeMatchesFiniteDifference) {
  const SpatialGrid g;
  const TwoLevelBasis b = TwoLevelBasis::harmonic(g);
  const DephasingParams p = b.dephasing(0.15);
  const auto rho0 = TwoLevelDensity::table1();
  const double t = 1.1, d = 1e-5;
  const auto np = assemble_density(analytic_state(rho0, p, t + d), b);
  const auto nm = assemble_density(analytic_state(rho0, p, t - d), b);
  const auto dn = density_time_derivative(analytic_state(rho0, p, t), p, b);
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_NEAR(dn[i], (np[i] - nm[i]) / (2.0 * d), 1e-9);
}

TEST(Phase, GaugeAndContinuity) {
  const SpatialGrid g;
  const TwoLevelBasis b = TwoLevelBasis::harmonic(g);
  const FieldSnapshot s = build_snapshot(TwoLevelDensity::table1(), b.dephasing(0.15), b, M_PI / 2.0);
  EXPECT_TRUE(s.complete());
  EXPECT_EQ(s.theta.front(), 0.0);
  // n theta' = -int d_t n exactly, so d_x (n theta') + d_t n is a quadrature error only.
  std::vector<double> flux(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) flux[i] = s.n[i] * s.dtheta_dx[i];
  const auto d = spatial_derivatives(flux, g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (s.n[i] > 1e-6) EXPECT_LT(std::abs(d.d1[i] + s.dn_dt[i]), 1e-4);
  }
}

TEST(Phase, StationaryStateHasNoPhase) {
  const SpatialGrid g;
  const TwoLevelBasis b = TwoLevelBasis::harmonic(g);
  const FieldSnapshot s =
      build_snapshot(TwoLevelDensity::from_real(1.0, 0.0, 0.0, 0.0), b.dephasing(0.15), b, 0.0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    EXPECT_EQ(s.theta[i], 0.0);
    EXPECT_EQ(s.dtheta_dt[i], 0.0);
  }
}

TEST(Phase, ForwardAndCentralTimeDerivativesAgree) {
  const SpatialGrid g;
  const TwoLevelBasis b = TwoLevelBasis::harmonic(g);
  const auto p = b.dephasing(0.15);
  SnapshotOptions opts;
  // Mixed state without a density node; the pure table state has one at
  // x = -1/sqrt 2 for t -> 0 where the phase is ill-conditioned.
  const TwoLevelDensity rho = TwoLevelDensity::from_real(0.8, 0.3, 0.3, 0.2);
  // At t = delta the central formula applies; just below it the forward one does.
  const FieldSnapshot central = build_snapshot(rho, p, b, opts.fd_dt, opts);
  const FieldSnapshot forward = build_snapshot(rho, p, b, (1.0 - 1e-9) * opts.fd_dt, opts);
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (central.n[i] > 1e-3) {
      EXPECT_NEAR(forward.dtheta_dt[i], central.dtheta_dt[i], 1e-6 * (1.0 + std::abs(central.dtheta_dt[i])));
    }
  }
}

TEST(Phase, InteriorUnderflowThrows) {
  const SpatialGrid g(-1.0, 1.0, 11);
  std::vector<double> n(11, 0.1), dn(11, 0.0);
  n[5] = 0.0;
  EXPECT_THROW(phase_from_continuity(n, dn, g), DensityUnderflow);
  std::vector<double> zero(11, 0.0);
  EXPECT_THROW(phase_from_continuity(zero, dn, g), DensityUnderflow);
  EXPECT_THROW(phase_from_continuity(std::vector<double>(9, 0.1), dn, g), GridMismatch);
}

TEST(Phase, GaugeMismatchDetected) {
  const std::vector<double> a{0.0, 1.0, 2.0}, shifted{0.5, 1.5, 2.5};
  EXPECT_THROW(phase_time_derivative(a, shifted, 1e-4), GaugeMismatch);
  EXPECT_NO_THROW(phase_time_derivative(a, a, 1e-4));
  EXPECT_THROW(phase_time_derivative(a, a, 0.0), DomainError);
}

TEST(Snapshot, NegativeTimeRejected) {
  const SpatialGrid g;
  const TwoLevelBasis b = TwoLevelBasis::harmonic(g);
  EXPECT_THROW(build_snapshot(TwoLevelDensity::table1(), b.dephasing(0.15), b, -0.1), DomainError);
}
