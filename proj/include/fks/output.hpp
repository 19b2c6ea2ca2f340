#pragma once

// File outputs: long-format CSV tables, SVG line charts and a staging
// directory that is renamed into place only when complete.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "fks/external_potential.hpp"

namespace fks {

/// 17 significant digits; non-finite values print as nan, inf, -inf.
std::string format_double(double v);
/// Shortest round-trip form, for messages.
std::string format_short(double v);

/// 16 hex digits of FNV-1a over `text`.
std::string fnv1a_hex(std::string_view text);

/// One named column of a snapshot table.
struct NamedField {
  std::string name;
  const std::vector<double>* values;
  const std::vector<SampleFlag>* flags;  ///< nullptr: every sample computed
};

/// Header `run_id,t,x,field,value,repaired`, one row per (field, x), fields in the given order.
std::string snapshot_csv(std::string_view run_id, double t, const SpatialGrid& grid,
                         const std::vector<NamedField>& fields);

struct SvgSeries {
  std::string label;
  std::vector<double> y;
  std::string stroke;
  std::string dash;  ///< SVG stroke-dasharray, empty for a solid line
};

/// Static line chart of several series over a common x axis.
std::string line_chart_svg(std::string_view title, std::string_view run_id,
                           const std::vector<double>& x, const std::vector<SvgSeries>& series,
                           std::string_view x_label = "x (a.u.)");

/// Writes into a sibling staging directory; commit() renames it onto the target.
/// An uncommitted stage is deleted on destruction.
class StagedDirectory {
 public:
  explicit StagedDirectory(std::filesystem::path target);
  ~StagedDirectory();
  StagedDirectory(const StagedDirectory&) = delete;
  StagedDirectory& operator=(const StagedDirectory&) = delete;

  void write(const std::string& name, std::string_view content);
  void commit();
  const std::filesystem::path& target() const noexcept { return target_; }

 private:
  std::filesystem::path target_;
  std::filesystem::path staging_;
  bool committed_ = false;
};

}  // namespace fks
