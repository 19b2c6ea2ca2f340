#include "fks/output.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <system_error>
#include <unistd.h>

#include "fks/error.hpp"

namespace fks {

namespace fs = std::filesystem;

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, r.ptr);
}

std::string format_short(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string fnv1a_hex(std::string_view text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[h & 0xf];
    h >>= 4;
  }
  return out;
}

std::string snapshot_csv(std::string_view run_id, double t, const SpatialGrid& grid,
                         const std::vector<NamedField>& fields) {
  std::string out = "run_id,t,x,field,value,repaired\n";
  const std::string prefix = std::string(run_id) + "," + format_double(t) + ",";
  std::vector<std::string> xs(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) xs[i] = format_double(grid.x(i));
  for (const NamedField& f : fields) {
    if (f.values->size() != grid.size() || (f.flags && f.flags->size() != grid.size())) {
      throw GridMismatch("field " + f.name + " does not match the grid");
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const int flag = f.flags ? static_cast<int>((*f.flags)[i]) : 0;
      out += prefix;
      out += xs[i];
      out += ',';
      out += f.name;
      out += ',';
      out += format_double((*f.values)[i]);
      out += ',';
      out += static_cast<char>('0' + flag);
      out += '\n';
    }
  }
  return out;
}

namespace {

std::string num(double v) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 2);
  return std::string(buf, r.ptr);
}

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

// Robust y-range: 2nd to 98th percentile of the finite samples, padded.
std::pair<double, double> y_range(const std::vector<SvgSeries>& series) {
  std::vector<double> all;
  for (const auto& s : series) {
    for (double v : s.y) {
      if (std::isfinite(v)) all.push_back(v);
    }
  }
  if (all.empty()) return {-1.0, 1.0};
  std::sort(all.begin(), all.end());
  const auto at = [&](double q) { return all[static_cast<std::size_t>(q * (all.size() - 1))]; };
  double lo = at(0.02), hi = at(0.98);
  if (hi - lo < 1e-12) {
    lo -= 0.5;
    hi += 0.5;
  }
  const double pad = 0.05 * (hi - lo);
  return {lo - pad, hi + pad};
}

}  // namespace

std::string line_chart_svg(std::string_view title, std::string_view run_id,
                           const std::vector<double>& x, const std::vector<SvgSeries>& series,
                           std::string_view x_label) {
  constexpr double W = 720, H = 450, L = 70, R = 20, T = 40, B = 50;
  const double x0 = x.front(), x1 = x.back();
  const auto [y0, y1] = y_range(series);
  const auto px = [&](double v) { return L + (v - x0) / (x1 - x0) * (W - L - R); };
  const auto py = [&](double v) {
    v = std::clamp(v, y0, y1);
    return H - B - (v - y0) / (y1 - y0) * (H - T - B);
  };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
    << "\" viewBox=\"0 0 " << W << ' ' << H << "\">\n";
  o << "<!-- run_id " << escape(run_id) << " -->\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
       "font-size=\"15\">"
    << escape(title) << "</text>\n";
  o << "<g stroke=\"black\" fill=\"none\">\n"
    << "<rect x=\"" << L << "\" y=\"" << T << "\" width=\"" << W - L - R << "\" height=\""
    << H - T - B << "\"/>\n</g>\n";

  o << "<g font-family=\"sans-serif\" font-size=\"11\">\n";
  for (int i = 0; i <= 4; ++i) {
    const double xv = x0 + (x1 - x0) * i / 4.0;
    const double yv = y0 + (y1 - y0) * i / 4.0;
    o << "<text x=\"" << num(px(xv)) << "\" y=\"" << H - B + 16
      << "\" text-anchor=\"middle\">" << num(xv) << "</text>\n";
    o << "<text x=\"" << L - 6 << "\" y=\"" << num(py(yv) + 4) << "\" text-anchor=\"end\">"
      << num(yv) << "</text>\n";
    o << "<line x1=\"" << L << "\" x2=\"" << W - R << "\" y1=\"" << num(py(yv)) << "\" y2=\""
      << num(py(yv)) << "\" stroke=\"#ddd\"/>\n";
  }
  o << "<text x=\"" << W / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\">"
    << escape(x_label) << "</text>\n</g>\n";

  for (const auto& s : series) {
    // Break the polyline at non-finite samples.
    std::string points;
    const auto flush = [&] {
      if (!points.empty()) {
        o << "<polyline fill=\"none\" stroke=\"" << s.stroke << "\" stroke-width=\"1.6\"";
        if (!s.dash.empty()) o << " stroke-dasharray=\"" << s.dash << "\"";
        o << " points=\"" << points << "\"/>\n";
        points.clear();
      }
    };
    for (std::size_t i = 0; i < x.size() && i < s.y.size(); ++i) {
      if (!std::isfinite(s.y[i])) {
        flush();
        continue;
      }
      points += num(px(x[i])) + "," + num(py(s.y[i])) + " ";
    }
    flush();
  }
  double legend_y = T + 16;
  o << "<rect x=\"" << W - R - 158 << "\" y=\"" << T + 4 << "\" width=\"150\" height=\""
    << 18 * series.size() + 6 << "\" fill=\"white\" fill-opacity=\"0.85\" stroke=\"#ccc\"/>\n";
  for (const auto& s : series) {
    o << "<line x1=\"" << W - R - 150 << "\" x2=\"" << W - R - 120 << "\" y1=\"" << legend_y
      << "\" y2=\"" << legend_y << "\" stroke=\"" << s.stroke << "\" stroke-width=\"2\"";
    if (!s.dash.empty()) o << " stroke-dasharray=\"" << s.dash << "\"";
    o << "/>\n<text x=\"" << W - R - 114 << "\" y=\"" << legend_y + 4
      << "\" font-family=\"sans-serif\" font-size=\"12\">" << escape(s.label) << "</text>\n";
    legend_y += 18;
  }
  o << "</svg>\n";
  return o.str();
}

StagedDirectory::StagedDirectory(fs::path target) : target_(std::move(target)) {
  if (!target_.empty() && !target_.has_filename()) target_ = target_.parent_path();
  if (target_.empty()) throw ConfigError("output directory is empty");
  const fs::path parent = fs::absolute(target_).parent_path();
  fs::create_directories(parent);
  const std::string base = target_.filename().string();
  staging_ = parent / ("." + base + ".staging-" + std::to_string(::getpid()));
  fs::remove_all(staging_);
  fs::create_directory(staging_);
}

StagedDirectory::~StagedDirectory() {
  if (!committed_) {
    std::error_code ec;
    fs::remove_all(staging_, ec);
  }
}

void StagedDirectory::write(const std::string& name, std::string_view content) {
  std::ofstream f(staging_ / name, std::ios::binary);
  f.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!f) throw Error("failed to write " + (staging_ / name).string());
}

void StagedDirectory::commit() {
  const fs::path target = fs::absolute(target_);
  fs::path old;
  if (fs::exists(target)) {
    old = target.parent_path() / ("." + target.filename().string() + ".old-" +
                                  std::to_string(::getpid()));
    fs::remove_all(old);
    fs::rename(target, old);
  }
  fs::rename(staging_, target);
  committed_ = true;
  if (!old.empty()) fs::remove_all(old);
}

}  // namespace fks
