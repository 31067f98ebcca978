#include "mcflab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <future>

namespace mcflab {

FarFieldPolicy resolve_policy(FarFieldKind kind, const InitialDatum& datum,
                              const ScalarField& u0) {
    switch (kind) {
        case FarFieldKind::LinearExtrapolate:
            return FarFieldPolicy::linear();
        case FarFieldKind::QuadraticExtrapolate:
            return FarFieldPolicy::quadratic();
        case FarFieldKind::FrozenInitialSlope:
            return FarFieldPolicy::frozen_from(u0);
        case FarFieldKind::ClampedInitialContinuation: {
            auto f = datum.profile;
            return FarFieldPolicy::clamped([f](double x) { return f(x); });
        }
    }
    throw InvalidArgument("resolve_policy: unknown policy kind");
}

ProbeResult uniqueness_probe(const InitialDatum& datum, const ProbeConfig& config) {
    ensure(config.widths.size() >= 2, "uniqueness_probe: need at least two window widths");
    for (std::size_t k = 1; k < config.widths.size(); ++k)
        ensure(config.widths[k] > config.widths[k - 1],
               "uniqueness_probe: widths must be increasing");
    ensure(config.flow.t_end > config.inner_start_time,
           "uniqueness_probe: t_end must exceed the inner start time");

    ProbeResult result;
    result.widths = config.widths;

    auto run_pair = [&](double R) {
        const double width = 2.0 * R;
        // Windows span [-2R, 2R] (1D) or [0, 2R] (radial) at the configured
        // spacing; the 1D node count 2k-1 is always odd.
        const auto count = static_cast<std::size_t>(std::llround(width / config.spacing)) + 1;
        ScalarField u0 =
            config.radial
                ? sample(datum.profile, RadialGrid(width, count, config.ambient_dim))
                : sample(datum.profile, Grid1D(-width, width, 2 * count - 1));
        FlowConfig flow = config.flow;
        flow.policy = resolve_policy(config.kind_a, datum, u0);
        auto run_a = std::async(std::launch::async, [&] { return evolve(u0, flow); });
        FlowConfig flow_b = config.flow;
        flow_b.policy = resolve_policy(config.kind_b, datum, u0);
        const Trajectory traj_b = evolve(u0, flow_b);
        const Trajectory traj_a = run_a.get();

        // Interior sup difference over {|x| <= R/2} and t >= t1.
        const std::vector<double> x = [&] {
            std::vector<double> coords(grid_node_count(u0.grid));
            if (const auto* g = std::get_if<Grid1D>(&u0.grid))
                for (std::size_t i = 0; i < coords.size(); ++i) coords[i] = g->node(i);
            else
                for (std::size_t i = 0; i < coords.size(); ++i)
                    coords[i] = std::get<RadialGrid>(u0.grid).node(i);
            return coords;
        }();
        double d = 0.0;
        for (std::size_t k = 0; k < traj_a.snapshots.size(); ++k) {
            if (traj_a.snapshots[k].time < config.inner_start_time) continue;
            for (std::size_t i = 0; i < x.size(); ++i)
                if (std::abs(x[i]) <= 0.5 * R)
                    d = std::max(d, std::abs(traj_a.snapshots[k].values[i] -
                                             traj_b.snapshots[k].values[i]));
        }
        return d;
    };

    for (double R : config.widths) result.interior_differences.push_back(run_pair(R));
    for (std::size_t k = 1; k < result.widths.size(); ++k) {
        const double prev = result.interior_differences[k - 1];
        const double curr = result.interior_differences[k];
        result.ratios.push_back(prev > 0.0 ? curr / prev : 0.0);
    }
    return result;
}

DoublingResult doubling_experiment(const InitialDatum& datum, const DoublingConfig& config) {
    ensure(!config.heights.empty(), "doubling_experiment: need at least one height");
    ensure(datum.convex && datum.proper, "doubling_experiment: datum must be convex and proper");

    DoublingResult result;
    ScalarField u0 = sample(datum.profile, config.grid);
    FlowConfig flow = config.flow;
    flow.record_times = config.times;
    if (!flow.record_times.empty() && flow.record_times.front() <= 0.0)
        flow.record_times.erase(flow.record_times.begin());
    auto graph_run = std::async(std::launch::async, [&] { return evolve(u0, flow); });

    std::vector<std::future<CurveTrajectory>> curve_runs;
    for (double height : config.heights)
        curve_runs.push_back(std::async(std::launch::async, [&, height] {
            ClosedCurve curve = double_at_height(datum, config.grid, height);
            const double per = perimeter(curve);
            const auto n_pts = static_cast<std::size_t>(
                std::max<double>(32.0, std::ceil(per / config.curve_segment)));
            curve = resample_uniform(curve, n_pts);
            CurveFlowConfig cfc;
            cfc.cfl = config.curve_cfl;
            cfc.t_end = config.times.back();
            cfc.redistribute_every = config.redistribute_every;
            cfc.record_times = config.times;
            if (!cfc.record_times.empty() && cfc.record_times.front() <= 0.0)
                cfc.record_times.erase(cfc.record_times.begin());
            return evolve_closed_curve(curve, cfc);
        }));
    for (auto& run : curve_runs) result.curve_trajs.push_back(run.get());
    result.graph_traj = graph_run.get();
    result.comparison = doubling_comparison(result.graph_traj, result.curve_trajs,
                                            config.heights, config.window, config.times);
    return result;
}

}  // namespace mcflab
