#pragma once

// End-to-end driver: snapshot fields, potentials, repair, and run directories.

#include <filesystem>
#include <string>
#include <vector>

#include "fks/config.hpp"
#include "fks/fields.hpp"
#include "fks/ks_exact.hpp"
#include "fks/ks_fractional.hpp"

namespace fks {

inline constexpr const char* kFieldOrder[] = {"n",  "theta",   "V_ext",   "V_c",
                                             "Vc_frac", "V_KS", "VKS_frac"};

struct SnapshotResult {
  FieldSnapshot fields;
  PotentialField v_ext;
  PotentialField v_c;        ///< V_KS - V_ext
  PotentialField v_c_frac;   ///< fractional V_KS - V_ext
  PotentialField v_ks;       ///< after singularity repair
  PotentialField v_ks_frac;  ///< after singularity repair
  RepairReport repair_exact;
  RepairReport repair_frac;
};

/// All fields at time t. Throws UnrepairableSingularity (message names alpha, t and
/// the x-range) when a potential cannot be repaired.
SnapshotResult compute_snapshot(const SimulationConfig& cfg, double t,
                                kernels::Exec exec = kernels::Exec::parallel);

struct Distance {
  double sup = 0.0;  ///< max |Vc_frac - V_c|
  double rel = 0.0;  ///< sup / max |V_c|
};

/// Distances over |x| <= half_width.
Distance frac_exact_distance(const SnapshotResult& r, double half_width = 2.0);

/// Hash of the canonical config text; names every row of a run.
std::string run_id(const SimulationConfig& cfg, std::string_view command);

struct SimulationRun {
  std::filesystem::path directory;
  std::string id;
  std::vector<SnapshotResult> snapshots;
};

/// One snapshot_<i>.csv (and .svg) per configured time plus manifest.json.
/// Nothing is written unless every snapshot succeeds.
SimulationRun simulate(const SimulationConfig& cfg, const std::filesystem::path& out_dir);

struct SweepPoint {
  double value = 0.0;
  bool ok = false;
  Distance distance;
  std::size_t repaired = 0;
  std::string error;  ///< set when the point could not be repaired
};

struct SweepRun {
  std::filesystem::path directory;
  std::string id;
  SweepAxis axis = SweepAxis::omega;
  std::vector<SweepPoint> points;
  std::vector<SnapshotResult> snapshots;  ///< parallel to points; empty fields where !ok

  bool all_ok() const;
};

/// Copy of cfg with one axis value substituted. K requires a kicked external potential.
SimulationConfig with_axis_value(const SimulationConfig& cfg, SweepAxis axis, double value);

/// One snapshot per value at cfg.sweeps.t (points computed in parallel), summary.csv
/// with axis,value,sup_dist,rel_dist,repaired_points. Unrepairable points are kept
/// in the summary as nan / -1 and listed in the manifest.
SweepRun sweep(const SimulationConfig& cfg, SweepAxis axis, const std::vector<double>& values,
               const std::filesystem::path& out_dir);

/// Code version string compiled into the manifest.
const char* version();

}  // namespace fks
