// Orchestrated experiments built on the solvers: truncation-insensitivity
// probes for the uniqueness statements and the compact doubling comparison.
#pragma once

#include "mcflab/analysis.hpp"
#include "mcflab/initdata.hpp"

namespace mcflab {

struct ProbeConfig {
    std::vector<double> widths;  // R list, increasing
    FarFieldPolicy policy_a;     // resolved per run (frozen slopes from u0)
    FarFieldPolicy policy_b;
    FarFieldKind kind_a = FarFieldKind::FrozenInitialSlope;
    FarFieldKind kind_b = FarFieldKind::LinearExtrapolate;
    FlowConfig flow;              // t_end, cfl, scheme; window set per R
    double spacing = 0.0625;      // grid spacing of the probe windows
    double inner_start_time = 0.05;
    bool radial = false;          // run the rotationally symmetric variant
    int ambient_dim = 2;
};

struct ProbeResult {
    std::vector<double> widths;
    // d(R) = sup over {|x| <= R/2, t in [t1, t_end]} of |u_a - u_b|.
    std::vector<double> interior_differences;
    // ratios[k] = d(R_{k+1}) / d(R_k); 0/0 reported as 0 (both runs agree
    // to machine precision, which satisfies any decay bound).
    std::vector<double> ratios;
};

ProbeResult uniqueness_probe(const InitialDatum& datum, const ProbeConfig& config);

struct DoublingConfig {
    std::vector<double> heights;
    double window = 1.0;
    std::vector<double> times;      // comparison times (ascending, > 0 after the first)
    Grid1D grid;                    // graph window
    FlowConfig flow;                // graph run configuration
    double curve_segment = 0.01;    // target segment length after resampling
    double curve_cfl = 0.4;
    std::size_t redistribute_every = 10;
};

struct DoublingResult {
    DoublingComparison comparison;
    std::vector<CurveTrajectory> curve_trajs;
    Trajectory graph_traj;
};

DoublingResult doubling_experiment(const InitialDatum& datum, const DoublingConfig& config);

// Builds the policy of the given kind for a concrete initial field / datum.
FarFieldPolicy resolve_policy(FarFieldKind kind, const InitialDatum& datum,
                              const ScalarField& u0);

}  // namespace mcflab
