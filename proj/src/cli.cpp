#include "fks/cli.hpp"

#include <algorithm>
#include <ostream>

#include "CLI11.hpp"
#include "fks/error.hpp"
#include "fks/fractional_kernel.hpp"
#include "fks/output.hpp"
#include "fks/pipeline.hpp"
#include "fks/validate.hpp"

namespace fks::cli {

namespace fs = std::filesystem;

namespace {

fs::path output_dir(const SimulationConfig& cfg, const std::string& override_dir) {
  return override_dir.empty() ? fs::path(cfg.output.directory) : fs::path(override_dir);
}

}  // namespace

int simulate_command(const SimulationConfig& cfg, const fs::path& out_dir, std::ostream& out,
                     std::ostream& err) {
  try {
    const SimulationRun run = simulate(cfg, out_dir);
    std::size_t repaired = 0;
    for (const auto& s : run.snapshots) repaired += s.repair_frac.repaired + s.repair_exact.repaired;
    out << "run " << run.id << ": " << run.snapshots.size() << " snapshots, " << repaired
        << " repaired samples -> " << out_dir.string() << '\n';
    return kOk;
  } catch (const UnrepairableSingularity& e) {
    err << "unrepairable singularity: " << e.what() << '\n';
    return kUnrepairable;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kValidationFailure;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact and space-fractional Kohn-Sham potentials of a dephasing two-level system"};
  app.require_subcommand(1);
  std::string out_dir;

  auto* sim = app.add_subcommand("simulate", "Write snapshot tables, plots and a manifest");
  std::string sim_config;
  sim->add_option("config", sim_config, "Config file")->required();
  sim->add_option("--out", out_dir, "Override the output directory");

  auto* swp = app.add_subcommand("sweep", "Sweep one parameter at the configured sweep time");
  std::string swp_config, axis_name, values_text;
  swp->add_option("config", swp_config, "Config file")->required();
  swp->add_option("--axis", axis_name, "omega, K or alpha")
      ->required()
      ->check(CLI::IsMember({"omega", "K", "alpha"}));
  swp->add_option("--values", values_text, "Comma-separated values (default: [sweeps] list)");
  swp->add_option("--out", out_dir, "Override the output directory");

  auto* val = app.add_subcommand("validate", "Run the acceptance checks");
  std::string val_config;
  val->add_option("config", val_config, "Config file (default settings if omitted)");

  auto* ml = app.add_subcommand("ml", "Evaluate the Mittag-Leffler function E_alpha(re + i im)");
  double alpha = 0.0, re = 0.0, im = 0.0;
  ml->add_option("--alpha", alpha, "Order in (0, 1]")->required();
  ml->add_option("--re", re, "Real part of the argument")->required();
  ml->add_option("--im", im, "Imaginary part of the argument");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (*sim) {
      const SimulationConfig cfg = load_config(sim_config);
      return simulate_command(cfg, output_dir(cfg, out_dir), out, err);
    }
    if (*swp) {
      const SimulationConfig cfg = load_config(swp_config);
      const SweepAxis axis = sweep_axis_from_string(axis_name);
      const std::vector<double> values =
          values_text.empty() ? cfg.sweeps.values(axis) : parse_list(values_text);
      const SweepRun r = sweep(cfg, axis, values, output_dir(cfg, out_dir));
      for (const auto& p : r.points) {
        out << to_string(axis) << " = " << format_short(p.value) << ": ";
        if (p.ok) {
          out << "sup " << format_double(p.distance.sup) << ", rel "
              << format_double(p.distance.rel) << ", repaired " << p.repaired << '\n';
        } else {
          out << "UNREPAIRABLE " << p.error << '\n';
        }
      }
      return r.all_ok() ? kOk : kUnrepairable;
    }
    if (*val) {
      const SimulationConfig cfg =
          val_config.empty() ? SimulationConfig::defaults() : load_config(val_config);
      const ValidationReport report = run_validation(cfg);
      out << report.render();
      return report.gating_passed() ? kOk : kValidationFailure;
    }
    if (*ml) {
      const cplx v = mittag_leffler(FracOrder(alpha), {re, im});
      out << format_double(v.real()) << ' ' << format_double(v.imag()) << '\n';
      return kOk;
    }
  } catch (const UnrepairableSingularity& e) {
    err << "unrepairable singularity: " << e.what() << '\n';
    return kUnrepairable;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const DomainError& e) {
    err << "invalid argument: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kValidationFailure;
  }
  return kConfigError;
}

}  // namespace fks::cli
