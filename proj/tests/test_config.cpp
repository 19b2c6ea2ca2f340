#include <gtest/gtest.h>

#include <cmath>
#include <fstream>

#include "fks/config.hpp"
#include "fks/error.hpp"
#include "gen.hpp"

using namespace fks;

#ifndef FKS_SOURCE_DIR
#define FKS_SOURCE_DIR "."
#endif

TEST(Scalars, PiExpressions) {
  EXPECT_DOUBLE_EQ(parse_scalar("pi"), M_PI);
  EXPECT_DOUBLE_EQ(parse_scalar(" pi/4 "), M_PI / 4.0);
  EXPECT_DOUBLE_EQ(parse_scalar("0.5*pi"), 0.5 * M_PI);
  EXPECT_DOUBLE_EQ(parse_scalar("3*pi/4"), 3.0 * M_PI / 4.0);
  EXPECT_DOUBLE_EQ(parse_scalar("-pi"), -M_PI);
  EXPECT_DOUBLE_EQ(parse_scalar("1e-3"), 1e-3);
  EXPECT_DOUBLE_EQ(parse_scalar("-2.5"), -2.5);
  for (const char* bad : {"", "pie", "1..2", "2*", "/3", "1/0", "abc"}) {
    EXPECT_THROW(parse_scalar(bad), ConfigError) << bad;
  }
}

TEST(Scalars, Lists) {
  const auto v = parse_list("0, pi/4, pi/2 ,pi");
  ASSERT_EQ(v.size(), 4u);
  EXPECT_DOUBLE_EQ(v[1], M_PI / 4.0);
  EXPECT_TRUE(parse_list("  ").empty());
  EXPECT_THROW(parse_list("1,,2"), ConfigError);
}

TEST(Config, EmptyTextGivesDefaults) {
  const SimulationConfig c = parse_config("");
  EXPECT_EQ(c.times.size(), 4u);
  EXPECT_DOUBLE_EQ(c.times.back(), M_PI);
  EXPECT_EQ(c.grid, SpatialGrid{});
  EXPECT_EQ(c.gamma, 0.15);
  EXPECT_EQ(c.rho0.rho01, cplx(0.5, 0.0));
  ASSERT_TRUE(std::holds_alternative<KickedOscillatorParams>(c.external));
  const auto& k = std::get<KickedOscillatorParams>(c.external);
  EXPECT_EQ(k.omega, 0.1);
  EXPECT_EQ(k.sign, HarmonicSign::as_printed_minus);
  EXPECT_DOUBLE_EQ(k.sigma_t, k.tau / 50.0);
  EXPECT_EQ(c.frac.order.value(), 0.3);
  EXPECT_EQ(c.sweeps.omega.size(), 8u);
  EXPECT_EQ(c.sweeps.K.size(), 6u);
  EXPECT_DOUBLE_EQ(c.sweeps.t, M_PI);
}

TEST(Config, ShippedFilesParse) {
  for (const char* name : {"default.ini", "stationary.ini", "strict_branch.ini"}) {
    EXPECT_NO_THROW(load_config(std::string(FKS_SOURCE_DIR) + "/configs/" + name)) << name;
  }
  const SimulationConfig st = load_config(std::string(FKS_SOURCE_DIR) + "/configs/stationary.ini");
  EXPECT_TRUE(std::holds_alternative<HarmonicParams>(st.external));
  EXPECT_EQ(st.rho0.rho00, cplx(1.0, 0.0));
}

TEST(Config, SigmaFollowsTauUnlessGiven) {
  const auto a = parse_config("[external]\ntau = 0.5\n");
  EXPECT_DOUBLE_EQ(std::get<KickedOscillatorParams>(a.external).sigma_t, 0.01);
  const auto b = parse_config("[external]\ntau = 0.5\nsigma_t = 0.003\n");
  EXPECT_DOUBLE_EQ(std::get<KickedOscillatorParams>(b.external).sigma_t, 0.003);
}

TEST(Config, Errors) {
  const char* bad[] = {
      "[grid]\nspacing = 0.1\n",
      "[nonsense]\nx = 1\n",
      "[times]\nvalues = 1, 0.5\n",
      "[times]\nvalues = -1, 0.5\n",
      "[times]\nvalues = 0, 0\n",
      "[grid]\nn_points = 800\n",
      "[grid]\nn_points = 10.5\n",
      "[dephasing]\ngamma = -1\n",
      "[dephasing]\ninitial_rho = 0.5, 0.5, 0.5\n",
      "[dephasing]\ninitial_rho = 0.6, 0.5, 0.5, 0.6\n",
      "[external]\ntype = square\n",
      "[external]\ntype = harmonic\nK = 1\n",
      "[external]\ncomb = delta\n",
      "[frac]\nalpha = 1.5\n",
      "[frac]\nbranch = complex\n",
      "[frac]\nrepair_max_run = 0\n",
      "[output]\nformats = csv, png\n",
      "[basis]\nomega = 0\n",
      "[grid\nx_min = -1\n",
  };
  for (const char* text : bad) EXPECT_THROW(parse_config(text), ConfigError) << text;
  EXPECT_THROW(load_config("/nonexistent/fks.ini"), ConfigError);
}

TEST(Config, ErrorMessageNamesKey) {
  try {
    parse_config("[external]\nwobble = 1\n");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("wobble"), std::string::npos);
  }
}

TEST(Config, RenderParseRoundTripProperty) {
  test::Gen g(61);
  for (int c = 0; c < 50; ++c) {
    SimulationConfig cfg = SimulationConfig::defaults();
    cfg.grid = SpatialGrid(-g.uniform(2.0, 10.0), g.uniform(2.0, 10.0), 2 * g.integer(5, 500) + 1);
    cfg.times = {g.uniform(0.0, 1.0)};
    cfg.times.push_back(cfg.times.back() + g.uniform(0.01, 2.0));
    cfg.gamma = g.uniform(0.0, 1.0);
    cfg.frac.order = FracOrder(g.uniform(0.05, 1.0));
    cfg.frac.branch = static_cast<PowerBranchMode>(g.integer(0, 2));
    if (g.integer(0, 1) == 0) {
      cfg.external = HarmonicParams{g.uniform(0.1, 3.0), g.uniform(0.5, 2.0)};
    } else {
      KickedOscillatorParams k;
      k.K = g.uniform(-2.0, 2.0);
      k.tau = g.uniform(0.05, 1.0);
      k.sigma_t = g.uniform(1e-4, 1e-2);
      k.comb = static_cast<CombMode>(g.integer(0, 2));
      k.sign = static_cast<HarmonicSign>(g.integer(0, 1));
      cfg.external = k;
    }
    cfg.output.svg = g.integer(0, 1) == 1;
    const std::string text = render_config(cfg);
    const SimulationConfig back = parse_config(text);
    EXPECT_EQ(render_config(back), text);
    EXPECT_EQ(back.grid, cfg.grid);
    EXPECT_EQ(back.times, cfg.times);
    EXPECT_EQ(back.frac.order.value(), cfg.frac.order.value());
  }
}

TEST(Sweep, AxisNames) {
  for (auto a : {SweepAxis::omega, SweepAxis::K, SweepAxis::alpha}) {
    EXPECT_EQ(sweep_axis_from_string(to_string(a)), a);
  }
  EXPECT_THROW(sweep_axis_from_string("k"), ConfigError);
}
