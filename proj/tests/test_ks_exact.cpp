#include <gtest/gtest.h>

#include <cmath>

#include "fks/error.hpp"
#include "fks/ks_exact.hpp"

using namespace fks;

namespace {

struct Scene {
  SpatialGrid grid;
  TwoLevelBasis basis = TwoLevelBasis::harmonic(grid);
  DephasingParams p = basis.dephasing(0.15);

  FieldSnapshot at(const TwoLevelDensity& rho, double t) const {
    return build_snapshot(rho, p, basis, t);
  }
};

const TwoLevelDensity kGround = TwoLevelDensity::from_real(1.0, 0.0, 0.0, 0.0);

}  // namespace

TEST(KsExact, StationaryOracle) {
  const Scene s;
  const FieldSnapshot snap = s.at(kGround, 0.0);
  const PotentialField v_ext = eval_harmonic(1.0, 1.0, s.grid, 0.0);
  const PotentialField v_ks = ks_potential_total(exact_correlation_potential(snap, v_ext), v_ext);
  for (std::size_t i = 0; i < s.grid.size(); ++i) {
    const double x = s.grid.x(i);
    if (std::abs(x) <= 3.0) EXPECT_NEAR(v_ks.values[i], 0.5 * x * x - 0.5, 1e-4) << x;
  }
}

TEST(KsExact, ExcitedStateNodeIsRejected) {
  // phi_1 vanishes at the grid centre, inside the density window.
  const Scene s;
  EXPECT_THROW(s.at(TwoLevelDensity::from_real(0.0, 0.0, 0.0, 1.0), 0.0), DensityUnderflow);
}

TEST(KsExact, MaskedOutsideWindow) {
  const Scene s;
  const FieldSnapshot snap = s.at(TwoLevelDensity::table1(), 0.5);
  const PotentialField v_c = exact_correlation_potential(snap, eval_harmonic(1.0, 1.0, s.grid, 0.5));
  for (std::size_t i = 0; i < s.grid.size(); ++i) {
    if (snap.n[i] > kPotentialWindow) {
      EXPECT_TRUE(std::isfinite(v_c.values[i]));
      EXPECT_EQ(v_c.flags[i], SampleFlag::computed);
    } else {
      EXPECT_TRUE(std::isnan(v_c.values[i]));
      EXPECT_EQ(v_c.flags[i], SampleFlag::masked);
    }
  }
}

TEST(KsExact, ExternalPotentialCancels) {
  const Scene s;
  const FieldSnapshot snap = s.at(TwoLevelDensity::table1(), 1.3);
  KickedOscillatorParams k;
  k.comb = CombMode::mean_field;
  const PotentialField a = eval_harmonic(1.0, 1.0, s.grid, 1.3);
  const PotentialField b = eval_delta_kicked(k, s.grid, 1.3);
  const PotentialField ka = ks_potential_total(exact_correlation_potential(snap, a), a);
  const PotentialField kb = ks_potential_total(exact_correlation_potential(snap, b), b);
  for (std::size_t i = 0; i < s.grid.size(); ++i) {
    if (snap.n[i] > kPotentialWindow) EXPECT_NEAR(ka.values[i], kb.values[i], 1e-12);
  }
}

TEST(KsExact, OrbitalCarriesDensity) {
  const Scene s;
  const FieldSnapshot snap = s.at(TwoLevelDensity::table1(), 2.0);
  const KsOrbital phi = orbital_from_fields(snap);
  for (std::size_t i = 0; i < s.grid.size(); ++i) {
    EXPECT_NEAR(std::norm(phi.values[i]), snap.n[i], 1e-15);
  }
}

TEST(KsExact, ChainRuleMatchesDirectDerivatives) {
  const Scene s;
  const FieldSnapshot snap = s.at(TwoLevelDensity::table1(), 1.0);
  const KsOrbital phi = orbital_from_fields(snap);
  const auto direct = complex_second_derivative(phi.values, s.grid);
  const auto chain = orbital_dxx_chain_rule(snap);
  for (std::size_t i = 0; i < s.grid.size(); ++i) {
    if (snap.n[i] > 1e-3) EXPECT_LT(std::abs(direct[i] - chain[i]), 2e-3) << s.grid.x(i);
  }
  const auto dt_chain = orbital_dt_chain_rule(snap);
  const double d = 1e-4;
  const KsOrbital plus = orbital_from_fields(s.at(TwoLevelDensity::table1(), 1.0 + d));
  const KsOrbital minus = orbital_from_fields(s.at(TwoLevelDensity::table1(), 1.0 - d));
  for (std::size_t i = 0; i < s.grid.size(); ++i) {
    if (snap.n[i] > 1e-3) {
      EXPECT_LT(std::abs((plus.values[i] - minus.values[i]) / (2.0 * d) - dt_chain[i]), 1e-6);
    }
  }
}

TEST(KsExact, ResidualSmallAndConverging) {
  double prev = 0.0;
  for (const SpatialGrid& g : {SpatialGrid{}, SpatialGrid{}.refined()}) {
    const TwoLevelBasis b = TwoLevelBasis::harmonic(g);
    const DephasingParams p = b.dephasing(0.15);
    const double t = 0.9, d = 1e-4;
    const FieldSnapshot now = build_snapshot(TwoLevelDensity::table1(), p, b, t);
    const PotentialField v_ext = eval_harmonic(1.0, 1.0, g, t);
    const PotentialField v_ks = ks_potential_total(exact_correlation_potential(now, v_ext), v_ext);
    const double r = tdse_residual(orbital_from_fields(build_snapshot(TwoLevelDensity::table1(), p, b, t - d)),
                                   orbital_from_fields(now),
                                   orbital_from_fields(build_snapshot(TwoLevelDensity::table1(), p, b, t + d)),
                                   v_ks, d);
    EXPECT_LT(r, 1e-3);
    if (prev > 0.0) EXPECT_NEAR(prev / r, 4.0, 0.5);
    prev = r;
  }
}

TEST(KsExact, Errors) {
  const Scene s;
  const FieldSnapshot snap = s.at(TwoLevelDensity::table1(), 0.5);
  const PotentialField v_other = eval_harmonic(1.0, 1.0, SpatialGrid(-8.0, 8.0, 401), 0.5);
  EXPECT_THROW(exact_correlation_potential(snap, v_other), GridMismatch);
  FieldSnapshot partial = snap;
  partial.dtheta_dt.clear();
  EXPECT_THROW(exact_correlation_potential(partial, eval_harmonic(1.0, 1.0, s.grid, 0.5)), MissingField);
  FieldSnapshot empty = snap;
  std::fill(empty.n.begin(), empty.n.end(), 0.0);
  EXPECT_THROW(exact_correlation_potential(empty, eval_harmonic(1.0, 1.0, s.grid, 0.5)), DensityUnderflow);
  const PotentialField a = eval_harmonic(1.0, 1.0, s.grid, 0.5);
  const PotentialField later = eval_harmonic(1.0, 1.0, s.grid, 0.6);
  EXPECT_THROW(ks_potential_total(a, later), GridMismatch);

  KsOrbital phi = orbital_from_fields(snap);
  KsOrbital rotated = phi;
  for (auto& v : rotated.values) v *= std::polar(1.0, 0.3);
  EXPECT_THROW(tdse_residual(rotated, phi, phi, a, 1e-4), GaugeMismatch);
  EXPECT_THROW(tdse_residual(phi, phi, phi, a, 0.0), DomainError);
}
