#include <gtest/gtest.h>

#include <cmath>
#include <omp.h>

#include "fks/error.hpp"
#include "fks/kernels.hpp"
#include "gen.hpp"

using namespace fks;
using namespace fks::kernels;

namespace {

struct Inputs {
  std::vector<double> n, dn, d2n, th, dth, dtt, v;

  explicit Inputs(std::size_t size, test::Gen& g)
      : n(g.vec(size, -1e-9, 1.0)),
        dn(g.vec(size, -2.0, 2.0)),
        d2n(g.vec(size, -3.0, 3.0)),
        th(g.vec(size, -4.0, 4.0)),
        dth(g.vec(size, -2.0, 2.0)),
        dtt(g.vec(size, -1.0, 1.0)),
        v(g.vec(size, -5.0, 5.0)) {}

  CorrelationInputs view() const { return {n, dn, d2n, th, dth, dtt, v}; }
};

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::isnan(a[i]) != std::isnan(b[i])) return false;
    if (!std::isnan(a[i]) && a[i] != b[i]) return false;
  }
  return true;
}

class ThreadCount : public ::testing::Test {
 protected:
  void SetUp() override { omp_set_num_threads(4); }
};

}  // namespace

TEST_F(ThreadCount, RlL1SerialAndOpenMpAgreeBitwise) {
  test::Gen g(21);
  for (int c = 0; c < 10; ++c) {
    const auto n = static_cast<std::size_t>(g.integer(3, 3000));
    const auto f = g.vec(n, -1.0, 1.0);
    const double h = g.uniform(1e-4, 0.1), a = g.uniform(0.05, 0.95);
    std::vector<double> s(n), p(n);
    serial::rl_l1(f, h, a, 1.3, s);
    omp::rl_l1(f, h, a, 1.3, p);
    EXPECT_TRUE(same_bits(s, p));
  }
}

TEST_F(ThreadCount, DerivativesSerialAndOpenMpAgreeBitwise) {
  test::Gen g(22);
  for (int c = 0; c < 10; ++c) {
    const auto n = static_cast<std::size_t>(g.integer(5, 5000));
    const auto f = g.vec(n, -1.0, 1.0);
    std::vector<double> s1(n), s2(n), p1(n), p2(n);
    serial::derivatives(f, 0.01, s1, s2);
    omp::derivatives(f, 0.01, p1, p2);
    EXPECT_TRUE(same_bits(s1, p1));
    EXPECT_TRUE(same_bits(s2, p2));
  }
}

TEST_F(ThreadCount, CorrelationKernelsSerialAndOpenMpAgreeBitwise) {
  test::Gen g(23);
  for (auto branch : {PowerBranchMode::signed_power, PowerBranchMode::principal_real,
                      PowerBranchMode::strict}) {
    const Inputs in(4001, g);
    std::vector<double> s(4001), p(4001);
    serial::exact_correlation(in.view(), 1e-8, s);
    omp::exact_correlation(in.view(), 1e-8, p);
    EXPECT_TRUE(same_bits(s, p));
    const FracCorrelationCoeffs k{0.3, 0.897, 1.05, branch};
    serial::frac_correlation(in.view(), k, 1e-8, s);
    omp::frac_correlation(in.view(), k, 1e-8, p);
    EXPECT_TRUE(same_bits(s, p));
  }
}

TEST(Derivatives, InteriorExactForQuartics) {
  const double h = 0.1;
  const std::size_t n = 41;
  std::vector<double> f(n), d1(n), d2(n);
  const auto x = [&](std::size_t i) { return -2.0 + h * static_cast<double>(i); };
  for (std::size_t i = 0; i < n; ++i) {
    const double t = x(i);
    f[i] = 1.0 - 2.0 * t + 0.5 * t * t + 0.3 * t * t * t - 0.1 * t * t * t * t;
  }
  derivatives(f, h, d1, d2, Exec::serial);
  for (std::size_t i = 2; i + 2 < n; ++i) {
    const double t = x(i);
    EXPECT_NEAR(d1[i], -2.0 + t + 0.9 * t * t - 0.4 * t * t * t, 1e-11);
    EXPECT_NEAR(d2[i], 1.0 + 1.8 * t - 1.2 * t * t, 1e-10);
  }
}

TEST(Derivatives, EdgesExactForQuadratics) {
  const double h = 0.25;
  std::vector<double> f(9), d1(9), d2(9);
  for (std::size_t i = 0; i < 9; ++i) {
    const double t = h * static_cast<double>(i);
    f[i] = 3.0 + t - 2.0 * t * t;
  }
  derivatives(f, h, d1, d2, Exec::parallel);
  for (std::size_t i = 0; i < 9; ++i) {
    const double t = h * static_cast<double>(i);
    EXPECT_NEAR(d1[i], 1.0 - 4.0 * t, 1e-12) << i;
    EXPECT_NEAR(d2[i], -4.0, 1e-11) << i;
  }
}

TEST(Derivatives, ValidatesSizes) {
  std::vector<double> f(4), a(4), b(4);
  EXPECT_THROW(derivatives(f, 0.1, a, b, Exec::serial), DomainError);
  std::vector<double> g(6), c(5), d(6);
  EXPECT_THROW(derivatives(g, 0.1, c, d, Exec::serial), GridMismatch);
}

TEST(Correlation, WindowAndFormula) {
  const std::vector<double> n{0.5, 1e-9}, dn{0.2, 0.0}, d2n{-0.4, 0.0}, th{0.3, 0.0},
      dth{0.1, 0.0}, dtt{0.05, 0.0}, v{1.0, 1.0};
  std::vector<double> out(2);
  exact_correlation({n, dn, d2n, th, dth, dtt, v}, 1e-8, out, Exec::serial);
  const double expect = -0.05 + (-0.4) / 2.0 - 0.04 / (8.0 * 0.25) - 0.5 * 0.01 - 1.0;
  EXPECT_NEAR(out[0], expect, 1e-15);
  EXPECT_TRUE(std::isnan(out[1]));
}

TEST(Correlation, StrictBranchGivesNaNForFallingDensity) {
  const std::vector<double> n{0.5, 0.5}, dn{0.2, -0.2}, z{0.0, 0.0}, v{0.0, 0.0};
  std::vector<double> out(2);
  frac_correlation({n, dn, z, z, z, z, v}, {0.3, 0.897, 1.05, PowerBranchMode::strict}, 1e-8, out,
                   Exec::serial);
  EXPECT_TRUE(std::isfinite(out[0]));
  EXPECT_TRUE(std::isnan(out[1]));
}

TEST(Correlation, MissingFieldThrows) {
  const std::vector<double> n(5, 1.0), v(5, 0.0), short_field(4, 0.0);
  std::vector<double> out(5);
  EXPECT_THROW(exact_correlation({n, n, short_field, n, n, n, v}, 1e-8, out, Exec::serial),
               MissingField);
}

TEST(Threads, EnvironmentVariableParsing) {
  ::setenv("FKS_NUM_THREADS", "3", 1);
  EXPECT_EQ(requested_threads(), 3);
  ::setenv("FKS_NUM_THREADS", "junk", 1);
  EXPECT_EQ(requested_threads(), 0);
  ::unsetenv("FKS_NUM_THREADS");
  EXPECT_EQ(requested_threads(), 0);
}
