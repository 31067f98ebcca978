// CSV and JSON persistence with byte-reproducible formatting.
#pragma once

#include <nlohmann/json.hpp>

#include "mcflab/analysis.hpp"
#include "mcflab/subdomain.hpp"

namespace mcflab {

using json = nlohmann::json;

// Snapshot CSV: header `t,x,u` (1D), `t,r,u` (radial) or `t,x,y,u` (2D), one
// row per node per snapshot, full-precision decimal floats.
void write_snapshots_csv(const std::string& path, const Trajectory& traj);
void write_monitor_csv(const std::string& path, const Trajectory& traj);
void write_subdomain_csv(const std::string& path, const SubdomainTrajectory& traj);
void write_curve_csv(const std::string& path, const CurveTrajectory& traj);

json report_to_json(const InvariantReport& report);

// FNV-1a over the canonical (key-sorted, whitespace-free) serialization;
// invariant under key reordering and formatting.
std::uint64_t config_hash(const json& config);

void write_text_file(const std::string& path, const std::string& contents);

}  // namespace mcflab
