// Explicit time integration of graphical mean curvature flow: 1D curve
// shortening (non-divergence and divergence forms), the rotationally
// symmetric n-dimensional equation, and the full 2D quasilinear equation.
#pragma once

#include <functional>

#include "mcflab/geometry.hpp"

namespace mcflab {

enum class Scheme { ExplicitEuler, Heun };
enum class CsfForm { NonDivergence, Divergence };

struct FlowConfig {
    Scheme scheme = Scheme::Heun;
    double cfl = 0.4;  // in (0, 1]
    double t_end = 0.0;
    std::size_t snapshot_stride = 100;
    FarFieldPolicy policy;
    CsfForm form = CsfForm::NonDivergence;  // 1D only
    // Manufactured-solution ghosts: when set, ghost values come from this
    // exact profile (x, t) instead of the far-field policy.
    std::function<double(double, double)> dirichlet_exact;
    // Additional snapshot times hit exactly (ascending).
    std::vector<double> record_times;
};

// CFL-limited step: cfl * h^2 / (2 * dim), never past the remaining time.
double stable_dt(const ScalarField& field, const FlowConfig& config);
double stable_dt(const ScalarField& field, const FlowConfig& config, double remaining);

ScalarField step_csf(const ScalarField& field, double dt, const FlowConfig& config);
ScalarField step_radial(const ScalarField& field, double dt, const FlowConfig& config);
ScalarField step_full2d(const ScalarField& field, double dt, const FlowConfig& config);

struct MonitorRow {
    double t = 0.0;
    double max_slope = 0.0;   // max |Du| over all nodes
    double max_curv = 0.0;    // max |A| over interior nodes
    double min_u = 0.0;       // min u over all nodes
    double min_lam_vh = 0.0;  // min eigenvalue of v h^i_j over interior nodes
};

// Curvature monitors skip this many nodes next to each truncation boundary.
inline constexpr std::size_t kInteriorMargin = 3;

struct Trajectory {
    std::vector<ScalarField> snapshots;
    std::vector<MonitorRow> monitor;
    FarFieldPolicy policy;  // policy the run used, for later geometry passes

    const ScalarField& initial() const { return snapshots.front(); }
    const ScalarField& final() const { return snapshots.back(); }
    // Snapshot index whose time matches t within tol; throws if absent.
    std::size_t snapshot_at(double t, double tol = 1e-9) const;
};

Trajectory evolve(const ScalarField& initial, const FlowConfig& config);

}  // namespace mcflab
