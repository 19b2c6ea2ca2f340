#include "fks/validate.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include <unistd.h>

#include "fks/cli.hpp"
#include "fks/error.hpp"
#include "fks/fields.hpp"
#include "fks/fractional_kernel.hpp"
#include "fks/ks_exact.hpp"
#include "fks/lindblad.hpp"
#include "fks/output.hpp"
#include "fks/pipeline.hpp"

namespace fks {

namespace fs = std::filesystem;

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Measured {
  double value = 0.0;
  bool passed = false;
  std::string detail;
};

CheckResult run_check(int id, std::string name, bool gating, double tolerance,
                      const std::function<Measured()>& body) {
  CheckResult c;
  c.id = id;
  c.name = std::move(name);
  c.gating = gating;
  c.tolerance = tolerance;
  try {
    const Measured m = body();
    c.measured = m.value;
    c.passed = m.passed;
    c.detail = m.detail;
  } catch (const std::exception& e) {
    c.passed = false;
    c.measured = std::nan("");
    c.detail = std::string("threw: ") + e.what();
  }
  return c;
}

std::string sci(double v) {
  std::ostringstream o;
  o.precision(3);
  o << std::scientific << v;
  return o.str();
}

double max_abs_diff(cplx a, cplx b) { return std::abs(a - b); }

double max_entry_diff(const TwoLevelDensity& a, const TwoLevelDensity& b) {
  return std::max({max_abs_diff(a.rho00, b.rho00), max_abs_diff(a.rho01, b.rho01),
                   max_abs_diff(a.rho10, b.rho10), max_abs_diff(a.rho11, b.rho11)});
}

SimulationConfig base_config() {
  SimulationConfig c = SimulationConfig::defaults();
  c.output.svg = false;
  return c;
}

SimulationConfig stationary_config() {
  SimulationConfig c = base_config();
  c.rho0 = TwoLevelDensity::from_real(1.0, 0.0, 0.0, 0.0);
  c.external = HarmonicParams{};
  return c;
}

FieldSnapshot snapshot_at(const SimulationConfig& c, double t, const SpatialGrid& grid) {
  const TwoLevelBasis basis = TwoLevelBasis::harmonic(grid, c.basis.omega, c.basis.mass);
  SnapshotOptions opts;
  opts.fd_dt = c.fd_dt;
  return build_snapshot(c.rho0, c.dephasing(), basis, t, opts);
}

double continuity_residual(const SimulationConfig& c, double t, const SpatialGrid& grid) {
  const FieldSnapshot s = snapshot_at(c, t, grid);
  std::vector<double> flux(s.n.size());
  for (std::size_t i = 0; i < flux.size(); ++i) flux[i] = s.n[i] * s.dtheta_dx[i];
  const Derivatives d = spatial_derivatives(flux, grid);
  double worst = 0.0;
  for (std::size_t i = 0; i < flux.size(); ++i) {
    if (s.n[i] > kResidualWindow) worst = std::max(worst, std::abs(s.dn_dt[i] + d.d1[i]));
  }
  return worst;
}

double tdse_at(const SimulationConfig& base, double t, const SpatialGrid& grid) {
  SimulationConfig c = base;
  c.grid = grid;
  const SnapshotResult now = compute_snapshot(c, t);
  const KsOrbital before = orbital_from_fields(snapshot_at(c, t - c.fd_dt, grid));
  const KsOrbital after = orbital_from_fields(snapshot_at(c, t + c.fd_dt, grid));
  return tdse_residual(before, orbital_from_fields(now.fields), after, now.v_ks, c.fd_dt);
}

bool within(double v, double lo, double hi) { return v >= lo && v <= hi; }

fs::path scratch_root(const fs::path& requested) {
  fs::path root = requested.empty() ? fs::temp_directory_path() /
                                          ("fks_validate_" + std::to_string(::getpid()))
                                    : requested;
  fs::create_directories(root);
  return root;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

bool ValidationReport::gating_passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return !c.gating || c.passed; });
}

const CheckResult* ValidationReport::find(int id) const {
  for (const auto& c : checks) {
    if (c.id == id) return &c;
  }
  return nullptr;
}

std::string ValidationReport::render() const {
  std::ostringstream o;
  int gating = 0, gating_ok = 0, trend = 0, trend_ok = 0;
  for (const auto& c : checks) {
    o << (c.passed ? "[PASS] " : "[FAIL] ") << (c.id < 10 ? "0" : "") << c.id << ' '
      << (c.gating ? "gating " : "trend  ") << c.name << "  measured=" << sci(c.measured)
      << " tol=" << sci(c.tolerance);
    if (!c.detail.empty()) o << "  (" << c.detail << ')';
    o << '\n';
    (c.gating ? gating : trend) += 1;
    if (c.passed) (c.gating ? gating_ok : trend_ok) += 1;
  }
  o << "gating " << gating_ok << '/' << gating << " passed, trends " << trend_ok << '/' << trend
    << " passed\n";
  return o.str();
}

ValidationReport run_validation(const SimulationConfig& cfg, const fs::path& scratch) {
  ValidationReport report;
  auto& out = report.checks;
  const DephasingParams table1{0.15, 0.5, 1.5};
  const TwoLevelDensity rho_t1 = TwoLevelDensity::table1();

  out.push_back(run_check(1, "lindblad closed form vs RK4 on [0,10]", true, 1e-8, [&] {
    TwoLevelDensity rk = rho_t1;
    double worst = 0.0;
    for (int seg = 1; seg <= 100; ++seg) {
      rk = propagate_rk4(rk, table1, 0.1, 1e-3);
      worst = std::max(worst, max_entry_diff(rk, analytic_state(rho_t1, table1, 0.1 * seg)));
    }
    return Measured{worst, worst < 1e-8, "dt = 1e-3, compared every 0.1"};
  }));

  out.push_back(run_check(2, "pure dephasing populations and coherence decay", true, 1e-12, [&] {
    double pop_exact = 0.0, pop_rk = 0.0, coh = 0.0;
    TwoLevelDensity rk = rho_t1;
    for (int seg = 1; seg <= 100; ++seg) {
      const double t = 0.1 * seg;
      rk = propagate_rk4(rk, table1, 0.1, 1e-3);
      const TwoLevelDensity a = analytic_state(rho_t1, table1, t);
      pop_exact = std::max({pop_exact, std::abs(a.rho00 - rho_t1.rho00),
                            std::abs(a.rho11 - rho_t1.rho11)});
      pop_rk = std::max({pop_rk, std::abs(rk.rho00 - rho_t1.rho00), std::abs(rk.rho11 - rho_t1.rho11)});
      coh = std::max(coh, std::abs(std::abs(a.rho01) - 0.5 * std::exp(-0.15 * t)));
    }
    const double at1 = std::abs(analytic_state(rho_t1, table1, 1.0).rho01);
    const bool ok = pop_exact < 1e-12 && pop_rk < 1e-9 && coh < 1e-12 &&
                    std::abs(at1 - 0.430354) < 1e-6;
    return Measured{std::max(pop_exact, coh), ok,
                    "rk4 populations " + sci(pop_rk) + " (tol 1e-9), |rho01(1)| = " +
                        format_double(at1)};
  }));

  out.push_back(run_check(3, "dephasing timescale 0.5(gamma_0 + gamma_1)", true, 0.0, [&] {
    const double v = dephasing_timescale(0.15, 0.15);
    return Measured{std::abs(v - 0.15), v == 0.15, "value " + format_double(v)};
  }));

  out.push_back(run_check(4, "density normalisation at 100 times in [0, 4pi]", true, 1e-6, [&] {
    const SpatialGrid grid;
    const TwoLevelBasis basis = TwoLevelBasis::harmonic(grid);
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
      const double t = 4.0 * kPi * k / 99.0;
      const auto n = assemble_density(analytic_state(rho_t1, basis.dephasing(0.15), t), basis);
      worst = std::max(worst, std::abs(trapezoid(n, grid.spacing()) - 1.0));
    }
    return Measured{worst, worst < 1e-6, ""};
  }));

  out.push_back(run_check(5, "mixed-state limit at t = 40", true, 1e-3, [&] {
    const SpatialGrid grid;
    const TwoLevelBasis basis = TwoLevelBasis::harmonic(grid);
    const auto n = assemble_density(analytic_state(rho_t1, basis.dephasing(0.15), 40.0), basis);
    double worst = 0.0;
    for (std::size_t i = 0; i < n.size(); ++i) {
      const double mixed = 0.5 * (basis.phi0[i] * basis.phi0[i] + basis.phi1[i] * basis.phi1[i]);
      worst = std::max(worst, std::abs(n[i] - mixed));
    }
    return Measured{worst, worst < 1e-3, ""};
  }));

  out.push_back(run_check(6, "continuity closure grid-halving ratio", true, 0.5, [&] {
    const SimulationConfig c = base_config();
    const SpatialGrid coarse;
    double lo = 1e300, hi = -1e300;
    std::string detail;
    for (double t : {kPi / 4.0, kPi / 2.0, kPi}) {
      const double rc = continuity_residual(c, t, coarse);
      const double rf = continuity_residual(c, t, coarse.refined());
      const double ratio = rc / rf;
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
      detail += (detail.empty() ? "" : ", ") + sci(rc) + "/" + sci(rf) + " = " + sci(ratio);
    }
    return Measured{lo, within(lo, 3.5, 4.5) && within(hi, 3.5, 4.5),
                    "ratios in [3.5, 4.5] at t = pi/4, pi/2, pi: " + detail};
  }));

  out.push_back(run_check(7, "evolution-equation residual with exact V_KS", true, 1e-6, [&] {
    const double stationary = tdse_at(stationary_config(), 1.0, SpatialGrid{});
    const SimulationConfig c = base_config();
    const double rc = tdse_at(c, kPi / 4.0, SpatialGrid{});
    const double rf = tdse_at(c, kPi / 4.0, SpatialGrid{}.refined());
    const double ratio = rc / rf;
    return Measured{stationary, stationary < 1e-6 && within(ratio, 3.5, 4.5),
                    "stationary residual; dephasing t = pi/4: " + sci(rc) + "/" + sci(rf) +
                        " ratio " + sci(ratio) + " (want [3.5, 4.5])"};
  }));

  out.push_back(run_check(8, "stationary V_KS = x^2/2 - 1/2 on |x| <= 3", true, 1e-4, [&] {
    const SnapshotResult r = compute_snapshot(stationary_config(), 0.0);
    double worst = 0.0;
    for (std::size_t i = 0; i < r.v_ks.size(); ++i) {
      const double x = r.fields.grid.x(i);
      if (std::abs(x) > 3.0 + 1e-12) continue;
      worst = std::max(worst, std::abs(r.v_ks.values[i] - (0.5 * x * x - 0.5)));
    }
    return Measured{worst, worst < 1e-4, ""};
  }));

  out.push_back(run_check(9, "KS potentials independent of V_ext (harmonic vs kicked)", true, 1e-12,
                          [&] {
    SimulationConfig kicked = base_config();
    SimulationConfig harmonic = base_config();
    harmonic.external = HarmonicParams{};
    double worst = 0.0;
    for (double t : {kPi / 4.0, kPi / 2.0, kPi}) {
      const SnapshotResult a = compute_snapshot(kicked, t);
      const SnapshotResult b = compute_snapshot(harmonic, t);
      for (std::size_t i = 0; i < a.v_ks.size(); ++i) {
        worst = std::max({worst, std::abs(a.v_ks.values[i] - b.v_ks.values[i]),
                          std::abs(a.v_ks_frac.values[i] - b.v_ks_frac.values[i])});
      }
    }
    return Measured{worst, worst < 1e-12, "all grid points, t = pi/4, pi/2, pi"};
  }));

  out.push_back(run_check(10, "Mittag-Leffler E_1 = exp and E_0.5(1)", true, 1e-10, [&] {
    double worst = 0.0;
    for (int k = 0; k <= 200; ++k) {
      const double x = -5.0 + 0.05 * k;
      const double e = std::exp(x);
      worst = std::max(worst, std::abs(mittag_leffler(FracOrder(1.0), {x, 0.0}).real() - e) / e);
    }
    const double half = mittag_leffler(FracOrder(0.5), {1.0, 0.0}).real();
    return Measured{worst, worst < 1e-10 && std::abs(half - 5.008980) < 1e-5,
                    "E_0.5(1) = " + format_double(half)};
  }));

  out.push_back(run_check(11, "fractional power rule vs quadrature, h = 1/1024", true, 1e-3, [&] {
    const double h = 1.0 / 1024.0;
    const std::size_t n = 2049;
    double worst = 0.0;
    for (double g : {0.5, 1.0, 2.0}) {
      SampledFunction f{h, std::vector<double>(n)};
      for (std::size_t i = 0; i < n; ++i) f.ys[i] = std::pow(f.x(i), g);
      for (double a : {0.3, 0.5, 0.7}) {
        const SampledFunction d = rl_frac_derivative(f, FracOrder(a));
        for (std::size_t i = 256; i < n; ++i) {
          const double exact = frac_power_rule(g, FracOrder(a), f.x(i));
          worst = std::max(worst, std::abs(d.ys[i] - exact) / std::abs(exact));
        }
      }
    }
    double constant = 0.0;
    for (double a : {0.3, 0.5, 0.7}) {
      const SampledFunction c{h, std::vector<double>(n, 3.7)};
      for (double v : rl_frac_derivative(c, FracOrder(a)).ys) constant = std::max(constant, std::abs(v));
    }
    return Measured{worst, worst < 1e-3 && constant < 1e-10,
                    "constant derivative " + sci(constant) + " (tol 1e-10)"};
  }));

  out.push_back(run_check(12, "fractional V_c + V_ext spot value at x = -1, theta = 0", true, 1e-3,
                          [&] {
    SimulationConfig c = stationary_config();
    c.frac.order = FracOrder(0.3);
    const SnapshotResult r = compute_snapshot(c, 0.0);
    const SpatialGrid& g = r.fields.grid;
    const auto i = static_cast<std::size_t>(std::lround((-1.0 - g.x_min()) / g.spacing()));
    const double got = r.v_c_frac.values[i] + r.v_ext.values[i];
    // Term by term from the analytic ground-state density.
    const double n = std::exp(-1.0) / std::sqrt(kPi);
    const double dn = 2.0 * n;
    const double target = 1.0 / (2.0 * std::sqrt(n)) * std::tgamma(1.5) / std::tgamma(1.2) *
                          std::pow(n, 0.2) * std::pow(dn, 0.3);
    const double err = std::abs(got - target);
    return Measured{err, err < 1e-3 && std::abs(target - 0.5942) < 1e-3,
                    "value " + format_double(got) + ", independent " + format_double(target)};
  }));

  const fs::path root = scratch_root(scratch);

  out.push_back(run_check(13, "singularity repair: mean, idempotence, long-run rejection", true, 0.0,
                          [&] {
    const SpatialGrid grid(-1.0, 1.0, 11);
    std::vector<double> v(grid.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = grid.x(i) * grid.x(i);
    const double expect = 0.5 * (v[3] + v[5]);
    v[4] = std::nan("");
    FracConfig fc;
    const PotentialField once = singularity_repair(PotentialField::from_values(0.0, grid, v), fc);
    const PotentialField twice = singularity_repair(once, fc);
    const double err = std::abs(once.values[4] - expect);
    const bool mean_ok = err == 0.0 && once.flags[4] == SampleFlag::repaired;
    const bool idem = twice.values == once.values && twice.flags == once.flags;
    bool rejected = false;
    std::fill(v.begin() + 3, v.begin() + 7, std::nan(""));
    try {
      singularity_repair(PotentialField::from_values(0.0, grid, v), fc);
    } catch (const UnrepairableSingularity&) {
      rejected = true;
    }
    SimulationConfig strict = cfg;
    strict.output.svg = false;
    strict.frac.branch = PowerBranchMode::strict;
    std::ostringstream sink;
    const int code = cli::simulate_command(strict, root / "strict", sink, sink);
    const bool no_partial = !fs::exists(root / "strict");
    return Measured{err, mean_ok && idem && rejected && code == cli::kUnrepairable && no_partial,
                    std::string("idempotent ") + (idem ? "yes" : "no") + ", 4-run rejected " +
                        (rejected ? "yes" : "no") + ", strict-branch simulate exit " +
                        std::to_string(code) + (no_partial ? "" : ", partial output left")};
  }));

  out.push_back(run_check(14, "simulate twice gives byte-identical CSVs", true, 0.0, [&] {
    SimulationConfig c = cfg;
    c.output.csv = true;
    c.output.svg = false;
    const SimulationRun a = simulate(c, root / "det_a");
    simulate(c, root / "det_b");
    std::size_t differing = 0;
    for (std::size_t i = 0; i < a.snapshots.size(); ++i) {
      const std::string name = "snapshot_" + std::to_string(i) + ".csv";
      const std::string sa = slurp(root / "det_a" / name);
      if (sa.empty() || sa != slurp(root / "det_b" / name)) ++differing;
    }
    return Measured{static_cast<double>(differing), differing == 0 && !a.snapshots.empty(),
                    std::to_string(a.snapshots.size()) + " snapshot files compared"};
  }));

  std::error_code ec;
  if (scratch.empty()) fs::remove_all(root, ec);

  out.push_back(run_check(15, "omega sweep: relative distance decreases", false, 0.0, [&] {
    const SimulationConfig c = base_config();
    std::vector<double> rel;
    std::string detail;
    for (double w : {0.5, 1.0, 1.5, 2.0, 3.0}) {
      const SimulationConfig cw = with_axis_value(c, SweepAxis::omega, w);
      rel.push_back(frac_exact_distance(compute_snapshot(cw, c.sweeps.t)).rel);
      detail += (detail.empty() ? "" : " ") + sci(rel.back());
    }
    bool monotone = true;
    for (std::size_t i = 1; i < rel.size(); ++i) monotone = monotone && rel[i] < rel[i - 1];
    return Measured{rel.back(), monotone, "rel distance at omega 0.5..3: " + detail};
  }));

  out.push_back(run_check(16, "K sweep: successive changes shrink for K >= 1.5", false, 0.0, [&] {
    const SimulationConfig c = base_config();
    const std::vector<double> ks{0.2, 0.5, 1.0, 1.5, 2.0};
    std::vector<PotentialField> fields;
    for (double k : ks) {
      fields.push_back(compute_snapshot(with_axis_value(c, SweepAxis::K, k), c.sweeps.t).v_c_frac);
    }
    std::vector<double> step;
    std::string detail;
    for (std::size_t j = 1; j < fields.size(); ++j) {
      double d = 0.0;
      for (std::size_t i = 0; i < fields[j].size(); ++i) {
        if (std::abs(fields[j].grid.x(i)) <= 2.0 + 1e-12) {
          d = std::max(d, std::abs(fields[j].values[i] - fields[j - 1].values[i]));
        }
      }
      step.push_back(d);
      detail += (detail.empty() ? "" : " ") + sci(d);
    }
    // Steps 0..1 lie in [0.2, 1.0]; step 3 is 1.5 -> 2.0.
    const double low = std::min(step[0], step[1]);
    const double high = step[3];
    return Measured{high, high < low,
                    "sup |dVc_frac| between successive K (0.2,0.5,1,1.5,2): " + detail};
  }));

  out.push_back(run_check(17, "fractional V_KS at t = 0 lower at both grid edges than centre", false,
                          0.0, [&] {
    const SnapshotResult r = compute_snapshot(base_config(), 0.0);
    const auto& v = r.v_ks_frac.values;
    const SpatialGrid& g = r.fields.grid;
    double centre = 0.0;
    int count = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (std::abs(g.x(i)) <= 0.5 + 1e-12) {
        centre += v[i];
        ++count;
      }
    }
    centre /= count;
    const double left = v.front(), right = v.back();
    return Measured{std::max(left, right) - centre, left < centre && right < centre,
                    "edges " + format_double(left) + ", " + format_double(right) + " vs centre " +
                        format_double(centre)};
  }));

  return report;
}

}  // namespace fks
