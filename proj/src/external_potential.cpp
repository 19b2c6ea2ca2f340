#include "fks/external_potential.hpp"

#include <cmath>
#include <string>

#include "fks/error.hpp"

namespace fks {

PotentialField PotentialField::from_values(double t, const SpatialGrid& grid, std::vector<double> values) {
  if (values.size() != grid.size()) throw GridMismatch("potential samples do not match grid");
  PotentialField f{t, grid, std::move(values), {}};
  f.flags.assign(f.values.size(), SampleFlag::computed);
  return f;
}

void PotentialField::mask_outside(std::span<const double> density, double floor) {
  if (density.size() != values.size()) throw GridMismatch("density does not match potential grid");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(density[i] > floor)) flags[i] = SampleFlag::masked;
  }
}

bool PotentialField::all_finite() const noexcept {
  for (double v : values) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

std::string_view to_string(HarmonicSign s) {
  return s == HarmonicSign::as_printed_minus ? "as-printed-minus" : "standard-plus";
}

std::string_view to_string(CombMode m) {
  switch (m) {
    case CombMode::gaussian_comb:
      return "gaussian-comb";
    case CombMode::mean_field:
      return "mean-field";
    case CombMode::off_kick_zero:
      return "off-kick-zero";
  }
  return "gaussian-comb";
}

HarmonicSign harmonic_sign_from_string(std::string_view s) {
  if (s == "as-printed-minus") return HarmonicSign::as_printed_minus;
  if (s == "standard-plus") return HarmonicSign::standard_plus;
  throw ConfigError("unknown harmonic_sign '" + std::string(s) + "'");
}

CombMode comb_mode_from_string(std::string_view s) {
  if (s == "gaussian-comb") return CombMode::gaussian_comb;
  if (s == "mean-field") return CombMode::mean_field;
  if (s == "off-kick-zero") return CombMode::off_kick_zero;
  throw ConfigError("unknown comb mode '" + std::string(s) + "'");
}

void KickedOscillatorParams::validate() const {
  if (!(tau > 0.0)) throw DomainError("kick interval tau must be positive");
  if (!(mass > 0.0)) throw DomainError("kicked oscillator mass must be positive");
  if (!(omega >= 0.0)) throw DomainError("kicked oscillator omega must be non-negative");
  if (comb == CombMode::gaussian_comb && !(sigma_t > 0.0)) {
    throw DomainError("gaussian comb width sigma_t must be positive");
  }
  if (comb == CombMode::off_kick_zero && !(frame_width > 0.0)) {
    throw DomainError("off-kick-zero frame width must be positive");
  }
}

double kick_comb(const KickedOscillatorParams& p, double t) {
  switch (p.comb) {
    case CombMode::mean_field:
      return 1.0 / p.tau;
    case CombMode::off_kick_zero: {
      const double nearest = std::round(t / p.tau) * p.tau;
      return std::abs(t - nearest) < 0.5 * p.frame_width ? 1.0 / p.frame_width : 0.0;
    }
    case CombMode::gaussian_comb: {
      const double reach = 6.0 * p.sigma_t;
      const double lo = std::ceil((t - reach) / p.tau);
      const double hi = std::floor((t + reach) / p.tau);
      const double norm = 1.0 / (p.sigma_t * std::sqrt(2.0 * M_PI));
      double c = 0.0;
      for (double n = lo; n <= hi; n += 1.0) {
        const double d = t - n * p.tau;
        if (std::abs(d) <= reach) c += norm * std::exp(-d * d / (2.0 * p.sigma_t * p.sigma_t));
      }
      return c;
    }
  }
  return 0.0;
}

PotentialField eval_harmonic(double omega, double mass, const SpatialGrid& grid, double t) {
  if (!(omega >= 0.0)) throw DomainError("harmonic omega must be non-negative");
  std::vector<double> v(grid.size());
  const double c = 0.5 * mass * omega * omega;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double x = grid.x(i);
    v[i] = c * x * x;
  }
  return PotentialField::from_values(t, grid, std::move(v));
}

PotentialField eval_delta_kicked(const KickedOscillatorParams& p, const SpatialGrid& grid, double t) {
  p.validate();
  const double s = p.sign == HarmonicSign::as_printed_minus ? -1.0 : 1.0;
  const double c = s * 0.5 * p.mass * p.omega * p.omega;
  const double kick = p.K * kick_comb(p, t);
  std::vector<double> v(grid.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double x = grid.x(i);
    v[i] = c * x * x + kick * std::cos(p.k * x);
  }
  return PotentialField::from_values(t, grid, std::move(v));
}

PotentialField evaluate(const ExternalPotential& v, const SpatialGrid& grid, double t) {
  return std::visit(
      [&](const auto& p) -> PotentialField {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, HarmonicParams>) {
          return eval_harmonic(p.omega, p.mass, grid, t);
        } else {
          return eval_delta_kicked(p, grid, t);
        }
      },
      v);
}

}  // namespace fks
