#include "mcflab/io.hpp"

#include <filesystem>
#include <fstream>

namespace mcflab {

namespace {

std::ofstream open_out(const std::string& path) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(path, std::ios::binary);
    ensure_runtime(out.good(), msg("cannot open '", path, "' for writing"));
    return out;
}

}  // namespace

void write_snapshots_csv(const std::string& path, const Trajectory& traj) {
    std::ofstream out = open_out(path);
    const GridVariant& grid = traj.initial().grid;
    if (const auto* g2 = std::get_if<TensorGrid2D>(&grid)) {
        out << "t,x,y,u\n";
        for (const ScalarField& snap : traj.snapshots) {
            const std::string ts = format_double(snap.time);
            for (std::size_t j = 0; j < g2->ny; ++j)
                for (std::size_t i = 0; i < g2->nx; ++i)
                    out << ts << ',' << format_double(g2->node_x(i)) << ','
                        << format_double(g2->node_y(j)) << ','
                        << format_double(snap.values[g2->flat(i, j)]) << '\n';
        }
        return;
    }
    const bool radial = std::holds_alternative<RadialGrid>(grid);
    out << (radial ? "t,r,u\n" : "t,x,u\n");
    for (const ScalarField& snap : traj.snapshots) {
        const std::string ts = format_double(snap.time);
        const std::size_t n = snap.values.size();
        for (std::size_t i = 0; i < n; ++i) {
            const double x = radial ? std::get<RadialGrid>(grid).node(i)
                                    : std::get<Grid1D>(grid).node(i);
            out << ts << ',' << format_double(x) << ',' << format_double(snap.values[i]) << '\n';
        }
    }
}

void write_monitor_csv(const std::string& path, const Trajectory& traj) {
    std::ofstream out = open_out(path);
    out << "t,max_grad,max_A,min_u,lam_min_vh\n";
    for (const MonitorRow& row : traj.monitor)
        out << format_double(row.t) << ',' << format_double(row.max_slope) << ','
            << format_double(row.max_curv) << ',' << format_double(row.min_u) << ','
            << format_double(row.min_lam_vh) << '\n';
}

void write_subdomain_csv(const std::string& path, const SubdomainTrajectory& traj) {
    std::ofstream out = open_out(path);
    out << "t,boundary_radius,min_outer,min_u\n";
    for (const SubdomainMonitorRow& row : traj.monitor)
        out << format_double(row.t) << ',' << format_double(row.boundary_radius) << ','
            << format_double(row.min_outer) << ',' << format_double(row.min_u) << '\n';
}

void write_curve_csv(const std::string& path, const CurveTrajectory& traj) {
    std::ofstream out = open_out(path);
    out << "t,x,y\n";
    for (const ClosedCurve& snap : traj.snapshots) {
        const std::string ts = format_double(snap.time);
        for (const Vec2& p : snap.points)
            out << ts << ',' << format_double(p.x) << ',' << format_double(p.y) << '\n';
    }
}

json report_to_json(const InvariantReport& report) {
    return json{{"check", report.check},
                {"margin", report.margin},
                {"location", json{{"node", report.worst_node}, {"t", report.worst_time}}},
                {"tolerance", report.tolerance},
                {"pass", report.pass},
                {"anchor", report.anchor}};
}

std::uint64_t config_hash(const json& config) {
    // nlohmann::json stores object keys sorted, so dump() is canonical.
    return fnv1a(config.dump());
}

void write_text_file(const std::string& path, const std::string& contents) {
    std::ofstream out = open_out(path);
    out << contents;
}

}  // namespace mcflab
