#include "fks/pipeline.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>

#include "json.hpp"

#include "fks/error.hpp"
#include "fks/output.hpp"

#ifndef FKS_VERSION
#define FKS_VERSION "0.0.0"
#endif

namespace fks {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

const char* version() { return FKS_VERSION; }

namespace {

ordered_json complex_json(cplx z) { return ordered_json::array({z.real(), z.imag()}); }

ordered_json rho_json(const TwoLevelDensity& r) {
  return {{"rho00", complex_json(r.rho00)},
          {"rho01", complex_json(r.rho01)},
          {"rho10", complex_json(r.rho10)},
          {"rho11", complex_json(r.rho11)}};
}

ordered_json repair_json(const RepairReport& r) {
  return {{"repaired", r.repaired}, {"held_masked", r.held}};
}

std::string comb_mode_name(const SimulationConfig& cfg) {
  if (const auto* k = std::get_if<KickedOscillatorParams>(&cfg.external)) {
    return std::string(to_string(k->comb));
  }
  return "none";
}

ordered_json manifest_base(const SimulationConfig& cfg, const std::string& id,
                           const std::string& command) {
  ordered_json m;
  m["run_id"] = id;
  m["command"] = command;
  m["version"] = version();
  m["gauge"] = "theta(x_min, t) = 0";
  m["comb_mode"] = comb_mode_name(cfg);
  if (const auto* k = std::get_if<KickedOscillatorParams>(&cfg.external)) {
    m["harmonic_sign"] = std::string(to_string(k->sign));
  }
  m["alpha"] = cfg.frac.order.value();
  m["branch"] = std::string(to_string(cfg.frac.branch));
  m["lambda_e"] = cfg.lambda_e;
  m["threads"] = omp_get_max_threads();
  m["config"] = render_config(cfg);
  return m;
}

std::vector<NamedField> table_fields(const SnapshotResult& r) {
  return {{"n", &r.fields.n, nullptr},
          {"theta", &r.fields.theta, nullptr},
          {"V_ext", &r.v_ext.values, &r.v_ext.flags},
          {"V_c", &r.v_c.values, &r.v_c.flags},
          {"Vc_frac", &r.v_c_frac.values, &r.v_c_frac.flags},
          {"V_KS", &r.v_ks.values, &r.v_ks.flags},
          {"VKS_frac", &r.v_ks_frac.values, &r.v_ks_frac.flags}};
}

std::string snapshot_chart(const SnapshotResult& r, const std::string& id, const std::string& title) {
  return line_chart_svg(title, id, r.fields.grid.points(),
                        {{"n(x,t)", r.fields.n, "#444444", "2,3"},
                         {"V_KS", r.v_ks.values, "#1f77b4", "8,4"},
                         {"fractional V_KS", r.v_ks_frac.values, "#d62728", ""}});
}

void write_snapshot(StagedDirectory& dir, const SimulationConfig& cfg, const SnapshotResult& r,
                    const std::string& id, std::size_t index, const std::string& title,
                    ordered_json& entry) {
  const std::string stem = "snapshot_" + std::to_string(index);
  entry["index"] = index;
  entry["t"] = r.fields.t;
  entry["rho"] = rho_json(r.fields.rho);
  entry["repairs"] = {{"V_c", repair_json(r.repair_exact)},
                      {"Vc_frac", repair_json(r.repair_frac)}};
  ordered_json files = ordered_json::array();
  if (cfg.output.csv) {
    dir.write(stem + ".csv", snapshot_csv(id, r.fields.t, r.fields.grid, table_fields(r)));
    files.push_back(stem + ".csv");
  }
  if (cfg.output.svg) {
    dir.write(stem + ".svg", snapshot_chart(r, id, title));
    files.push_back(stem + ".svg");
  }
  entry["files"] = files;
}

std::string time_label(double t) { return "t = " + format_double(t) + " a.u."; }

}  // namespace

SnapshotResult compute_snapshot(const SimulationConfig& cfg, double t, kernels::Exec exec) {
  const TwoLevelBasis basis = TwoLevelBasis::harmonic(cfg.grid, cfg.basis.omega, cfg.basis.mass);
  SnapshotOptions opts;
  opts.fd_dt = cfg.fd_dt;
  opts.exec = exec;

  SnapshotResult r;
  r.fields = build_snapshot(cfg.rho0, cfg.dephasing(), basis, t, opts);
  r.v_ext = evaluate(cfg.external, cfg.grid, t);
  const PotentialField v_c = exact_correlation_potential(r.fields, r.v_ext, kPotentialWindow, exec);
  const PotentialField v_cf =
      frac_correlation_potential(r.fields, r.v_ext, cfg.frac, kPotentialWindow, exec);
  // Repair acts on the Kohn-Sham sums so the held tails stay independent of V_ext;
  // the correlation parts are then V_KS - V_ext.
  try {
    r.v_ks = singularity_repair(ks_potential_total(v_c, r.v_ext), cfg.frac, &r.repair_exact);
    r.v_ks_frac = singularity_repair(frac_ks_potential(v_cf, r.v_ext), cfg.frac, &r.repair_frac);
  } catch (const UnrepairableSingularity& e) {
    throw UnrepairableSingularity("alpha = " + format_short(cfg.frac.order.value()) + ", t = " +
                                      format_short(t) + ": " + e.what(),
                                  e.x_begin(), e.x_end(), e.run_length());
  }
  const auto minus_ext = [&](const PotentialField& ks) {
    PotentialField c = ks;
    for (std::size_t i = 0; i < c.values.size(); ++i) c.values[i] -= r.v_ext.values[i];
    return c;
  };
  r.v_c = minus_ext(r.v_ks);
  r.v_c_frac = minus_ext(r.v_ks_frac);
  return r;
}

Distance frac_exact_distance(const SnapshotResult& r, double half_width) {
  Distance d;
  double scale = 0.0;
  const SpatialGrid& g = r.fields.grid;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (std::abs(g.x(i)) > half_width + 1e-12) continue;
    d.sup = std::max(d.sup, std::abs(r.v_c_frac.values[i] - r.v_c.values[i]));
    scale = std::max(scale, std::abs(r.v_c.values[i]));
  }
  d.rel = scale > 0.0 ? d.sup / scale : std::numeric_limits<double>::infinity();
  return d;
}

std::string run_id(const SimulationConfig& cfg, std::string_view command) {
  return fnv1a_hex(std::string(command) + "\n" + render_config(cfg));
}

SimulationRun simulate(const SimulationConfig& cfg, const fs::path& out_dir) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  SimulationRun run;
  run.directory = out_dir;
  run.id = run_id(cfg, "simulate");
  for (double t : cfg.times) run.snapshots.push_back(compute_snapshot(cfg, t));

  StagedDirectory dir(out_dir);
  ordered_json manifest = manifest_base(cfg, run.id, "simulate");
  ordered_json snaps = ordered_json::array();
  for (std::size_t i = 0; i < run.snapshots.size(); ++i) {
    ordered_json entry;
    write_snapshot(dir, cfg, run.snapshots[i], run.id, i, time_label(cfg.times[i]), entry);
    snaps.push_back(entry);
  }
  manifest["snapshots"] = snaps;
  manifest["wall_time_s"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  dir.write("manifest.json", manifest.dump(2) + "\n");
  dir.commit();
  return run;
}

bool SweepRun::all_ok() const {
  return std::all_of(points.begin(), points.end(), [](const SweepPoint& p) { return p.ok; });
}

SimulationConfig with_axis_value(const SimulationConfig& cfg, SweepAxis axis, double value) {
  SimulationConfig c = cfg;
  switch (axis) {
    case SweepAxis::omega:
      if (!(value > 0.0)) throw ConfigError("sweep: omega values must be positive");
      std::visit([&](auto& p) { p.omega = value; }, c.external);
      break;
    case SweepAxis::K: {
      auto* k = std::get_if<KickedOscillatorParams>(&c.external);
      if (k == nullptr) throw ConfigError("sweep: K axis needs external.type = kicked");
      if (!std::isfinite(value)) throw ConfigError("sweep: K values must be finite");
      k->K = value;
      break;
    }
    case SweepAxis::alpha:
      try {
        c.frac.order = FracOrder(value);
      } catch (const DomainError& e) {
        throw ConfigError(std::string("sweep: ") + e.what());
      }
      break;
  }
  c.times = {cfg.sweeps.t};
  c.validate();
  return c;
}

SweepRun sweep(const SimulationConfig& cfg, SweepAxis axis, const std::vector<double>& values,
               const fs::path& out_dir) {
  cfg.validate();
  if (values.empty()) throw ConfigError("sweep: no values given");
  const auto start = std::chrono::steady_clock::now();

  std::vector<SimulationConfig> configs;
  for (double v : values) configs.push_back(with_axis_value(cfg, axis, v));

  SweepRun run;
  run.directory = out_dir;
  run.axis = axis;
  {
    std::string key = "sweep " + std::string(to_string(axis));
    for (double v : values) key += " " + format_double(v);
    run.id = run_id(cfg, key);
  }
  run.points.resize(values.size());
  run.snapshots.resize(values.size());
  std::vector<std::exception_ptr> failures(values.size());

  const auto count = static_cast<std::ptrdiff_t>(values.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const auto u = static_cast<std::size_t>(i);
    SweepPoint& p = run.points[u];
    p.value = values[u];
    try {
      run.snapshots[u] = compute_snapshot(configs[u], cfg.sweeps.t, kernels::Exec::serial);
      p.ok = true;
      p.distance = frac_exact_distance(run.snapshots[u]);
      p.repaired = run.snapshots[u].repair_frac.repaired;
    } catch (const UnrepairableSingularity& e) {
      p.ok = false;
      p.error = e.what();
    } catch (...) {
      failures[u] = std::current_exception();
    }
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }

  StagedDirectory dir(out_dir);
  ordered_json manifest = manifest_base(cfg, run.id, "sweep");
  manifest["axis"] = std::string(to_string(axis));
  manifest["t"] = cfg.sweeps.t;
  std::string summary = "axis,value,sup_dist,rel_dist,repaired_points\n";
  ordered_json points = ordered_json::array();
  for (std::size_t i = 0; i < run.points.size(); ++i) {
    const SweepPoint& p = run.points[i];
    summary += std::string(to_string(axis)) + "," + format_double(p.value) + ",";
    ordered_json entry;
    entry["value"] = p.value;
    entry["ok"] = p.ok;
    if (p.ok) {
      summary += format_double(p.distance.sup) + "," + format_double(p.distance.rel) + "," +
                 std::to_string(p.repaired) + "\n";
      const std::string label = std::string(to_string(axis)) + " = " + format_double(p.value) +
                                ", " + time_label(cfg.sweeps.t);
      write_snapshot(dir, configs[i], run.snapshots[i], run.id, i, label, entry);
    } else {
      summary += "nan,nan,-1\n";
      entry["error"] = p.error;
    }
    points.push_back(entry);
  }
  dir.write("summary.csv", summary);
  manifest["points"] = points;
  manifest["wall_time_s"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  dir.write("manifest.json", manifest.dump(2) + "\n");
  dir.commit();
  return run;
}

}  // namespace fks
