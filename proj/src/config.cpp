#include "fks/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "fks/error.hpp"

namespace fks {

namespace pt = boost::property_tree;

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_factor(std::string_view f, std::string_view whole) {
  f = trim(f);
  if (f == "pi" || f == "+pi") return kPi;
  if (f == "-pi") return -kPi;
  double v = 0.0;
  const char* end = f.data() + f.size();
  const auto [ptr, ec] = std::from_chars(f.data(), end, v);
  if (f.empty() || ec != std::errc() || ptr != end) {
    throw ConfigError("cannot parse number '" + std::string(whole) + "'");
  }
  return v;
}

std::string fmt(double v) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string fmt_list(const std::vector<double>& vs) {
  std::string s;
  for (std::size_t i = 0; i < vs.size(); ++i) s += (i ? "," : "") + fmt(vs[i]);
  return s;
}

bool parse_bool_format(const std::string& formats, std::string_view name) {
  std::stringstream ss(formats);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (trim(item) == name) return true;
  }
  return false;
}

using Schema = std::map<std::string, std::set<std::string>>;

const Schema& schema() {
  static const Schema s = {
      {"grid", {"x_min", "x_max", "n_points"}},
      {"times", {"values", "fd_dt"}},
      {"dephasing", {"gamma", "initial_rho", "lambda_e"}},
      {"basis", {"omega", "mass"}},
      {"external",
       {"type", "omega", "mass", "K", "k", "tau", "harmonic_sign", "comb", "sigma_t",
        "frame_width"}},
      {"frac", {"alpha", "branch", "repair_max_run"}},
      {"sweeps", {"omega", "K", "alpha", "t"}},
      {"output", {"directory", "formats"}},
  };
  return s;
}

void check_keys(const pt::ptree& tree) {
  for (const auto& [section, body] : tree) {
    const auto it = schema().find(section);
    if (it == schema().end()) throw ConfigError("unknown section [" + section + "]");
    if (!body.data().empty() && body.empty()) {
      throw ConfigError("key '" + section + "' outside any section");
    }
    for (const auto& [key, value] : body) {
      if (!it->second.count(key)) {
        throw ConfigError("unknown key '" + key + "' in section [" + section + "]");
      }
    }
  }
}

template <class Fn>
void with(const pt::ptree& tree, const std::string& path, Fn&& fn) {
  if (const auto v = tree.get_optional<std::string>(path)) {
    const std::string s{trim(*v)};
    try {
      fn(s);
    } catch (const ConfigError& e) {
      throw ConfigError(path + ": " + e.what());
    } catch (const Error& e) {
      throw ConfigError(path + ": " + e.what());
    }
  }
}

}  // namespace

std::string_view to_string(SweepAxis a) {
  switch (a) {
    case SweepAxis::omega:
      return "omega";
    case SweepAxis::K:
      return "K";
    case SweepAxis::alpha:
      return "alpha";
  }
  return "omega";
}

SweepAxis sweep_axis_from_string(std::string_view s) {
  if (s == "omega") return SweepAxis::omega;
  if (s == "K") return SweepAxis::K;
  if (s == "alpha") return SweepAxis::alpha;
  throw ConfigError("unknown sweep axis '" + std::string(s) + "' (omega, K or alpha)");
}

const std::vector<double>& SweepConfig::values(SweepAxis a) const {
  switch (a) {
    case SweepAxis::omega:
      return omega;
    case SweepAxis::K:
      return K;
    case SweepAxis::alpha:
      return alpha;
  }
  return omega;
}

SimulationConfig SimulationConfig::defaults() {
  SimulationConfig c;
  c.times = {0.0, kPi / 4.0, kPi / 2.0, kPi};
  return c;
}

DephasingParams SimulationConfig::dephasing() const {
  return {gamma, 0.5 * basis.omega, 1.5 * basis.omega};
}

void SimulationConfig::validate() const {
  if (times.empty()) throw ConfigError("times: at least one snapshot time is required");
  if (!(times.front() >= 0.0)) throw ConfigError("times: first time must be >= 0");
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) throw ConfigError("times: values must be strictly increasing");
  }
  if (!(fd_dt > 0.0 && fd_dt < 0.1)) throw ConfigError("times: fd_dt must lie in (0, 0.1)");
  if (!(basis.omega > 0.0) || !(basis.mass > 0.0)) {
    throw ConfigError("basis: omega and mass must be positive");
  }
  try {
    dephasing().validate();
    rho0.validate(1e-9);
    if (const auto* k = std::get_if<KickedOscillatorParams>(&external)) k->validate();
    frac.validate();
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  if (const auto* h = std::get_if<HarmonicParams>(&external)) {
    if (!(h->omega > 0.0) || !(h->mass > 0.0)) {
      throw ConfigError("external: harmonic omega and mass must be positive");
    }
  }
  if (!(sweeps.t >= 0.0)) throw ConfigError("sweeps: t must be >= 0");
}

double parse_scalar(std::string_view text) {
  const std::string_view whole = trim(text);
  if (whole.empty()) throw ConfigError("empty number");
  // Left-to-right chain of '*' and '/' over numbers and the symbol pi.
  double value = 1.0;
  char op = '*';
  std::size_t start = 0;
  for (std::size_t i = 0; i <= whole.size(); ++i) {
    const bool at_end = i == whole.size();
    if (at_end || whole[i] == '*' || whole[i] == '/') {
      const double f = parse_factor(whole.substr(start, i - start), whole);
      value = op == '*' ? value * f : value / f;
      if (!at_end) op = whole[i];
      start = i + 1;
    }
  }
  if (!std::isfinite(value)) throw ConfigError("non-finite number '" + std::string(whole) + "'");
  return value;
}

std::vector<double> parse_list(std::string_view text) {
  std::vector<double> out;
  std::string_view rest = trim(text);
  if (rest.empty()) return out;
  while (true) {
    const std::size_t comma = rest.find(',');
    out.push_back(parse_scalar(rest.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return out;
}

SimulationConfig parse_config(const std::string& text) {
  pt::ptree tree;
  std::istringstream in(text);
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  check_keys(tree);

  SimulationConfig c = SimulationConfig::defaults();

  double x_min = c.grid.x_min(), x_max = c.grid.x_max();
  double n_points = static_cast<double>(c.grid.size());
  with(tree, "grid.x_min", [&](const std::string& s) { x_min = parse_scalar(s); });
  with(tree, "grid.x_max", [&](const std::string& s) { x_max = parse_scalar(s); });
  with(tree, "grid.n_points", [&](const std::string& s) { n_points = parse_scalar(s); });
  if (!(n_points >= 3.0) || n_points != std::floor(n_points)) {
    throw ConfigError("grid.n_points must be an integer >= 3");
  }
  try {
    c.grid = SpatialGrid(x_min, x_max, static_cast<std::size_t>(n_points));
  } catch (const Error& e) {
    throw ConfigError(std::string("grid: ") + e.what());
  }

  with(tree, "times.values", [&](const std::string& s) { c.times = parse_list(s); });
  with(tree, "times.fd_dt", [&](const std::string& s) { c.fd_dt = parse_scalar(s); });

  with(tree, "dephasing.gamma", [&](const std::string& s) { c.gamma = parse_scalar(s); });
  with(tree, "dephasing.initial_rho", [&](const std::string& s) {
    const auto r = parse_list(s);
    if (r.size() != 4) throw ConfigError("expects four entries rho00, rho01, rho10, rho11");
    c.rho0 = TwoLevelDensity::from_real(r[0], r[1], r[2], r[3]);
  });
  with(tree, "dephasing.lambda_e", [&](const std::string& s) { c.lambda_e = s; });

  with(tree, "basis.omega", [&](const std::string& s) { c.basis.omega = parse_scalar(s); });
  with(tree, "basis.mass", [&](const std::string& s) { c.basis.mass = parse_scalar(s); });

  std::string type = "kicked";
  with(tree, "external.type", [&](const std::string& s) { type = s; });
  if (type == "kicked") {
    KickedOscillatorParams k;
    bool sigma_given = false;
    with(tree, "external.omega", [&](const std::string& s) { k.omega = parse_scalar(s); });
    with(tree, "external.mass", [&](const std::string& s) { k.mass = parse_scalar(s); });
    with(tree, "external.K", [&](const std::string& s) { k.K = parse_scalar(s); });
    with(tree, "external.k", [&](const std::string& s) { k.k = parse_scalar(s); });
    with(tree, "external.tau", [&](const std::string& s) { k.tau = parse_scalar(s); });
    with(tree, "external.harmonic_sign",
         [&](const std::string& s) { k.sign = harmonic_sign_from_string(s); });
    with(tree, "external.comb", [&](const std::string& s) { k.comb = comb_mode_from_string(s); });
    with(tree, "external.sigma_t", [&](const std::string& s) {
      k.sigma_t = parse_scalar(s);
      sigma_given = true;
    });
    with(tree, "external.frame_width",
         [&](const std::string& s) { k.frame_width = parse_scalar(s); });
    if (!sigma_given) k.sigma_t = k.tau / 50.0;
    c.external = k;
  } else if (type == "harmonic") {
    for (const char* key : {"K", "k", "tau", "harmonic_sign", "comb", "sigma_t", "frame_width"}) {
      if (tree.get_optional<std::string>(std::string("external.") + key)) {
        throw ConfigError(std::string("external.") + key + " applies only to type = kicked");
      }
    }
    HarmonicParams h;
    with(tree, "external.omega", [&](const std::string& s) { h.omega = parse_scalar(s); });
    with(tree, "external.mass", [&](const std::string& s) { h.mass = parse_scalar(s); });
    c.external = h;
  } else {
    throw ConfigError("external.type must be kicked or harmonic, got '" + type + "'");
  }

  with(tree, "frac.alpha", [&](const std::string& s) { c.frac.order = FracOrder(parse_scalar(s)); });
  with(tree, "frac.branch", [&](const std::string& s) { c.frac.branch = branch_from_string(s); });
  with(tree, "frac.repair_max_run", [&](const std::string& s) {
    const double v = parse_scalar(s);
    if (v != std::floor(v) || v < 1.0 || v > 1e6) throw ConfigError("must be a positive integer");
    c.frac.repair_max_run = static_cast<int>(v);
  });

  with(tree, "sweeps.omega", [&](const std::string& s) { c.sweeps.omega = parse_list(s); });
  with(tree, "sweeps.K", [&](const std::string& s) { c.sweeps.K = parse_list(s); });
  with(tree, "sweeps.alpha", [&](const std::string& s) { c.sweeps.alpha = parse_list(s); });
  with(tree, "sweeps.t", [&](const std::string& s) { c.sweeps.t = parse_scalar(s); });

  with(tree, "output.directory", [&](const std::string& s) { c.output.directory = s; });
  with(tree, "output.formats", [&](const std::string& s) {
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto f = trim(item);
      if (f != "csv" && f != "svg") throw ConfigError("unknown format '" + std::string(f) + "'");
    }
    c.output.csv = parse_bool_format(s, "csv");
    c.output.svg = parse_bool_format(s, "svg");
  });

  c.validate();
  return c;
}

SimulationConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string render_config(const SimulationConfig& c) {
  std::ostringstream o;
  o << "[grid]\n"
    << "x_min = " << fmt(c.grid.x_min()) << "\n"
    << "x_max = " << fmt(c.grid.x_max()) << "\n"
    << "n_points = " << c.grid.size() << "\n\n";
  o << "[times]\n"
    << "values = " << fmt_list(c.times) << "\n"
    << "fd_dt = " << fmt(c.fd_dt) << "\n\n";
  o << "[dephasing]\n"
    << "gamma = " << fmt(c.gamma) << "\n"
    << "initial_rho = "
    << fmt_list({c.rho0.rho00.real(), c.rho0.rho01.real(), c.rho0.rho10.real(), c.rho0.rho11.real()})
    << "\n"
    << "lambda_e = " << c.lambda_e << "\n\n";
  o << "[basis]\n"
    << "omega = " << fmt(c.basis.omega) << "\n"
    << "mass = " << fmt(c.basis.mass) << "\n\n";
  o << "[external]\n";
  if (const auto* k = std::get_if<KickedOscillatorParams>(&c.external)) {
    o << "type = kicked\n"
      << "omega = " << fmt(k->omega) << "\n"
      << "mass = " << fmt(k->mass) << "\n"
      << "K = " << fmt(k->K) << "\n"
      << "k = " << fmt(k->k) << "\n"
      << "tau = " << fmt(k->tau) << "\n"
      << "harmonic_sign = " << to_string(k->sign) << "\n"
      << "comb = " << to_string(k->comb) << "\n"
      << "sigma_t = " << fmt(k->sigma_t) << "\n"
      << "frame_width = " << fmt(k->frame_width) << "\n\n";
  } else {
    const auto& h = std::get<HarmonicParams>(c.external);
    o << "type = harmonic\n"
      << "omega = " << fmt(h.omega) << "\n"
      << "mass = " << fmt(h.mass) << "\n\n";
  }
  o << "[frac]\n"
    << "alpha = " << fmt(c.frac.order.value()) << "\n"
    << "branch = " << to_string(c.frac.branch) << "\n"
    << "repair_max_run = " << c.frac.repair_max_run << "\n\n";
  o << "[sweeps]\n"
    << "omega = " << fmt_list(c.sweeps.omega) << "\n"
    << "K = " << fmt_list(c.sweeps.K) << "\n"
    << "alpha = " << fmt_list(c.sweeps.alpha) << "\n"
    << "t = " << fmt(c.sweeps.t) << "\n\n";
  std::string formats;
  if (c.output.csv) formats = "csv";
  if (c.output.svg) formats += formats.empty() ? "svg" : ",svg";
  o << "[output]\n"
    << "directory = " << c.output.directory << "\n"
    << "formats = " << formats << "\n";
  return o.str();
}

}  // namespace fks
