#include "mcflab/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>

#include "mcflab/experiments.hpp"
#include "mcflab/subdomain.hpp"

namespace mcflab {

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        pass = pass && ok;
        if (!detail.empty()) detail += "; ";
        detail += what + (ok ? " [ok]" : " [FAIL]");
    }
};

double sup_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

std::vector<double> linspace_times(double t0, double t1, std::size_t count) {
    std::vector<double> t(count);
    for (std::size_t k = 0; k < count; ++k)
        t[k] = t0 + (t1 - t0) * static_cast<double>(k) / static_cast<double>(count - 1);
    return t;
}

std::vector<double> logspace_times(double t0, double t1, std::size_t count) {
    std::vector<double> t(count);
    const double l0 = std::log(t0), l1 = std::log(t1);
    for (std::size_t k = 0; k < count; ++k)
        t[k] = std::exp(l0 + (l1 - l0) * static_cast<double>(k) / static_cast<double>(count - 1));
    return t;
}

// 1. Exact-solution convergence on the translating profile t - ln cos x with
// exact Dirichlet ghosts; second order demands error ratios in [3.2, 4.8] per
// mesh doubling and a 5e-4 ceiling on the finest mesh.
Outcome criterion_translator_convergence() {
    const auto t_begin = std::chrono::steady_clock::now();
    const double t_end = 0.5;
    const auto exact = [](double x, double t) { return t - std::log(std::cos(x)); };
    std::vector<double> errors;
    for (double h : {0.012, 0.006, 0.003}) {
        const auto n = static_cast<std::size_t>(std::llround(2.4 / h)) + 1;
        const Grid1D grid(-1.2, 1.2, n);
        ScalarField u0 = sample([&](double x) { return exact(x, 0.0); }, grid);
        FlowConfig flow;
        flow.scheme = Scheme::Heun;
        flow.cfl = 0.8;
        flow.t_end = t_end;
        flow.snapshot_stride = 0;
        flow.dirichlet_exact = exact;
        const Trajectory traj = evolve(u0, flow);
        const ScalarField& fin = traj.final();
        double err = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            err = std::max(err, std::abs(fin.values[i] - exact(grid.node(i), fin.time)));
        errors.push_back(err);
    }
    Outcome out;
    for (std::size_t k = 1; k < errors.size(); ++k) {
        const double ratio = errors[k - 1] / errors[k];
        out.require(ratio >= 3.2 && ratio <= 4.8,
                    msg("error ratio ", ratio, " in [3.2, 4.8]"));
    }
    out.require(errors.back() <= 5e-4, msg("finest error ", errors.back(), " <= 5e-4"));
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_begin).count();
    out.require(seconds <= 60.0, msg("runtime ", seconds, " s <= 60 s"));
    return out;
}

// 2. Cross-oracle equivalence: the two 1D discretizations agree from corner
// data, and the full 2D solver agrees with the radial one on a paraboloid.
Outcome criterion_cross_oracle() {
    Outcome out;
    {
        const double h = 0.0125;
        const Grid1D grid(-8.0, 8.0, 1281);
        const InitialDatum datum = builtin("abs");
        ScalarField u0 = sample(datum.profile, grid);
        FlowConfig flow;
        flow.t_end = 0.1;
        flow.snapshot_stride = 0;
        flow.form = CsfForm::NonDivergence;
        const Trajectory a = evolve(u0, flow);
        flow.form = CsfForm::Divergence;
        const Trajectory b = evolve(u0, flow);
        const double d = sup_diff(a.final().values, b.final().values);
        out.require(d <= 10.0 * h * h,
                    msg("1D form difference ", d, " <= ", 10.0 * h * h));
    }
    {
        const double h = 0.05;
        const InitialDatum datum = builtin("paraboloid");
        const TensorGrid2D grid2(-3.0, 3.0, 121, -3.0, 3.0, 121);
        ScalarField w0 = sample([&](double x, double y) { return datum.eval2d(x, y); }, grid2);
        FlowConfig flow2;
        flow2.t_end = 0.1;
        flow2.snapshot_stride = 0;
        const Trajectory full = evolve(w0, flow2);

        const RadialGrid gridr(3.0, 61, 2);
        ScalarField r0 = sample(datum.profile, gridr);
        const Trajectory rad = evolve(r0, flow2);

        double d = 0.0;
        const auto& vals = full.final().values;
        for (std::size_t j = 0; j < grid2.ny; ++j)
            for (std::size_t i = 0; i < grid2.nx; ++i) {
                const double r = std::hypot(grid2.node_x(i), grid2.node_y(j));
                if (r > 1.0) continue;
                const double ur = cubic_interp_uniform(rad.final().values, gridr.h, r);
                d = std::max(d, std::abs(vals[grid2.flat(i, j)] - ur));
            }
        out.require(d <= 20.0 * h * h,
                    msg("2D vs radial difference ", d, " <= ", 20.0 * h * h));
    }
    return out;
}

// 3. The arctan increment bound holds exactly on 1e5 seeded samples.
Outcome criterion_arctan_bound() {
    std::mt19937_64 rng(12345);
    const double lo = std::log(1e-8), hi = std::log(1e6);
    std::size_t failures = 0;
    for (std::size_t k = 0; k < 100000; ++k) {
        double v1 = std::exp(lo + (hi - lo) * unit_double(rng()));
        double v2 = std::exp(lo + (hi - lo) * unit_double(rng()));
        const double gamma = 1.0 - unit_double(rng());  // (0, 1]
        if (k % 17 == 0) v2 = 0.0;
        if (k % 23 == 0) v1 = 0.0;
        if (k % 10 == 0) v2 = v1;
        if (!lemma21_check(v1, v2, gamma).holds) ++failures;
    }
    Outcome out;
    out.require(failures == 0, msg(failures, " violations in 100000 samples"));
    return out;
}

// 4. Barrier: 20 seeded Lipschitz data shifted to u0 >= 0; the parabolic-ball
// minimum of u + 10 t / R stays above -10 h^2.
Outcome criterion_barrier() {
    Outcome out;
    const double h = 0.05;
    const Grid1D grid(-12.0, 12.0, 481);
    double worst = 0.0;
    bool all_pass = true;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        InitialDatum datum = random_lipschitz(seed, 1.0, grid);
        ScalarField u0 = sample(datum.profile, grid);
        const double min0 = *std::min_element(u0.values.begin(), u0.values.end());
        datum = datum.shifted(-min0);
        u0 = sample(datum.profile, grid);
        FlowConfig flow;
        flow.t_end = 0.5;
        flow.snapshot_stride = 50;
        const Trajectory traj = evolve(u0, flow);
        BarrierSpec spec;
        spec.C = 0.0;
        spec.R = 10.0;
        const InvariantReport report = barrier_check(traj, spec, 10.0 * h * h);
        all_pass = all_pass && report.pass;
        worst = std::min(worst, report.margin);
    }
    out.require(all_pass, msg("20 seeds, worst margin ", worst, " >= ", -10.0 * h * h));
    return out;
}

// 5. Parabolic rescaling u -> u_lambda at lambda = 2: evolving then rescaling
// matches evolving the rescaled datum, and the gap shrinks under refinement.
Outcome criterion_scaling_symmetry() {
    const auto discrepancy = [](double h) {
        const double lambda = 2.0;
        const double T = 0.1;
        const auto na = static_cast<std::size_t>(std::llround(8.0 / h)) + 1;
        const auto nb = static_cast<std::size_t>(std::llround(4.0 / h)) + 1;
        const Grid1D grid_a(-4.0, 4.0, na);
        const Grid1D grid_b(-2.0, 2.0, nb);
        FlowConfig flow;
        flow.snapshot_stride = 0;
        flow.t_end = lambda * lambda * T;
        const Trajectory run_a =
            evolve(sample([](double x) { return 0.5 * x * x; }, grid_a), flow);
        flow.t_end = T;
        const Trajectory run_b = evolve(
            sample([&](double x) { return 0.5 * lambda * x * x; }, grid_b), flow);

        double d = 0.0;
        for (std::size_t i = 0; i < grid_b.n_nodes; ++i) {
            const double x = grid_b.node(i);
            if (std::abs(x) > 1.0) continue;
            const auto ia = static_cast<std::size_t>(
                std::llround((lambda * x - grid_a.x_min) / grid_a.h));
            d = std::max(d, std::abs(run_b.final().values[i] -
                                     run_a.final().values[ia] / lambda));
        }
        return d;
    };
    Outcome out;
    const double d_coarse = discrepancy(0.02);
    const double d_fine = discrepancy(0.01);
    out.require(d_coarse <= 20.0 * 0.02 * 0.02,
                msg("rescaling discrepancy ", d_coarse, " <= ", 20.0 * 0.02 * 0.02));
    out.require(d_fine < d_coarse,
                msg("refined discrepancy ", d_fine, " < ", d_coarse));
    return out;
}

ProbeConfig default_probe(bool radial) {
    ProbeConfig pc;
    pc.widths = {4.0, 8.0, 16.0};
    pc.kind_a = FarFieldKind::FrozenInitialSlope;
    pc.kind_b = FarFieldKind::LinearExtrapolate;
    pc.flow.t_end = 4.0;
    pc.flow.snapshot_stride = 0;
    pc.flow.record_times = {0.05, 0.1, 0.2, 0.4, 0.8, 1.6, 2.4, 3.2, 4.0};
    pc.spacing = 0.0625;
    pc.inner_start_time = 0.05;
    pc.radial = radial;
    pc.ambient_dim = 2;
    return pc;
}

// 6. Truncation-insensitivity probe: the interior difference between two
// far-field policies decays at least 4x per window doubling, 1D and radial.
Outcome criterion_uniqueness_probe() {
    Outcome out;
    const InitialDatum cone = builtin("cone(1)");
    for (bool radial : {false, true}) {
        const ProbeResult probe = uniqueness_probe(cone, default_probe(radial));
        for (std::size_t k = 0; k < probe.ratios.size(); ++k) {
            const double dprev = probe.interior_differences[k];
            const double dnext = probe.interior_differences[k + 1];
            out.require(dnext <= 0.25 * dprev,
                        msg(radial ? "radial" : "1D", " d(", probe.widths[k + 1], ") = ", dnext,
                            " <= 0.25 * d(", probe.widths[k], ") = ", 0.25 * dprev));
        }
    }
    return out;
}

// 7. Supersolution gap: W = u - ubar - eps (t + eps) u^2 stays nonpositive up
// to discretization error on the probe pair, shifted so u >= 1.
Outcome criterion_supersolution_gap() {
    const double h = 0.0625;
    const InitialDatum cone = builtin("cone(1)").shifted(1.0);
    const Grid1D grid(-8.0, 8.0, 257);
    ScalarField u0 = sample(cone.profile, grid);
    FlowConfig flow;
    flow.t_end = 0.25;
    flow.snapshot_stride = 0;
    flow.record_times = linspace_times(0.01, 0.25, 25);
    flow.policy = FarFieldPolicy::frozen_from(u0);
    const Trajectory a = evolve(u0, flow);
    flow.policy = FarFieldPolicy::linear();
    const Trajectory b = evolve(u0, flow);
    const SupersolutionGapResult gap = supersolution_gap(a, b, 0.01, 1.0);
    Outcome out;
    out.require(gap.max_W <= 50.0 * h * h,
                msg("max W = ", gap.max_W, " <= ", 50.0 * h * h, " (T* = ", gap.T_star, ")"));
    return out;
}

// 8. Convexity / curvature condition: paraboloid runs keep the smallest
// eigenvalue of v h^i_j above -10 h^2 in 1D, radial and full 2D.
Outcome criterion_condition_preservation() {
    Outcome out;
    const InitialDatum datum = builtin("paraboloid");
    const auto min_monitor = [](const Trajectory& traj) {
        double m = std::numeric_limits<double>::infinity();
        for (const MonitorRow& row : traj.monitor) m = std::min(m, row.min_lam_vh);
        return m;
    };
    {
        const double h = 0.03;
        const Grid1D grid(-6.0, 6.0, 401);
        FlowConfig flow;
        flow.t_end = 0.5;
        flow.snapshot_stride = 0;
        flow.policy = FarFieldPolicy::clamped(datum.profile);
        const double m = min_monitor(evolve(sample(datum.profile, grid), flow));
        out.require(m >= -10.0 * h * h, msg("1D min eigenvalue ", m, " >= ", -10.0 * h * h));
    }
    {
        const double h = 0.03;
        const RadialGrid grid(6.0, 201, 2);
        FlowConfig flow;
        flow.t_end = 0.5;
        flow.snapshot_stride = 0;
        flow.policy = FarFieldPolicy::clamped(datum.profile);
        const double m = min_monitor(evolve(sample(datum.profile, grid), flow));
        out.require(m >= -10.0 * h * h, msg("radial min eigenvalue ", m, " >= ", -10.0 * h * h));
    }
    {
        const double h = 0.05;
        const TensorGrid2D grid(-3.0, 3.0, 121, -3.0, 3.0, 121);
        FlowConfig flow;
        flow.t_end = 0.5;
        flow.snapshot_stride = 0;
        flow.policy = FarFieldPolicy::clamped2d(datum.profile2d);
        const double m = min_monitor(
            evolve(sample([&](double x, double y) { return datum.eval2d(x, y); }, grid), flow));
        out.require(m >= -10.0 * h * h, msg("2D min eigenvalue ", m, " >= ", -10.0 * h * h));
    }
    return out;
}

// 9. Harnack inequality on convex proper data: minimized quantity stays above
// -50 h^2 for t in [0.05, 0.5].
Outcome criterion_harnack() {
    Outcome out;
    const InitialDatum datum = builtin("paraboloid");
    const double h = 0.02;
    FlowConfig flow;
    flow.t_end = 0.5;
    flow.snapshot_stride = 0;
    flow.record_times = linspace_times(0.0375, 0.5, 38);
    flow.policy = FarFieldPolicy::clamped(datum.profile);
    {
        const Grid1D grid(-6.0, 6.0, 601);
        const Trajectory traj = evolve(sample(datum.profile, grid), flow);
        const InvariantReport rep = harnack_monitor(traj, 0.05, 50.0 * h * h);
        out.require(rep.pass, msg("1D margin ", rep.margin, " >= ", -50.0 * h * h));
    }
    {
        const RadialGrid grid(6.0, 301, 2);
        const Trajectory traj = evolve(sample(datum.profile, grid), flow);
        const InvariantReport rep = harnack_monitor(traj, 0.05, 50.0 * h * h);
        out.require(rep.pass, msg("radial margin ", rep.margin, " >= ", -50.0 * h * h));
    }
    return out;
}

// 10. Compact doubling: distances to the entire-graph run decrease strictly
// in the doubling height, the last is within 2x of the graph solver's own
// error, and the curves stay nested at all recorded times.
Outcome criterion_doubling() {
    Outcome out;
    const InitialDatum datum = builtin("paraboloid");
    DoublingConfig dc;
    dc.heights = {2.0, 4.0, 8.0};
    dc.window = 1.0;
    dc.times = {0.0, 0.125, 0.25};
    dc.grid = Grid1D(-6.0, 6.0, 1201);
    dc.flow.t_end = 0.25;
    dc.flow.snapshot_stride = 0;
    dc.curve_segment = 0.01;
    const DoublingResult result = doubling_experiment(datum, dc);

    const std::size_t t_last = dc.times.size() - 1;
    for (std::size_t k = 1; k < dc.heights.size(); ++k) {
        const double prev = result.comparison.distances[k - 1][t_last];
        const double curr = result.comparison.distances[k][t_last];
        out.require(curr < prev, msg("distance(", dc.heights[k], ") = ", curr, " < distance(",
                                     dc.heights[k - 1], ") = ", prev));
    }

    // The graph solver's own error at h = 0.01, estimated against h = 0.02 by
    // second-order extrapolation.
    FlowConfig flow = dc.flow;
    flow.record_times = {0.25};
    const Grid1D coarse(-6.0, 6.0, 601);
    const Trajectory coarse_run = evolve(sample(datum.profile, coarse), flow);
    double graph_gap = 0.0;
    for (std::size_t i = 0; i < coarse.n_nodes; ++i) {
        if (std::abs(coarse.node(i)) > dc.window) continue;
        graph_gap = std::max(graph_gap, std::abs(coarse_run.final().values[i] -
                                                 result.graph_traj.final().values[2 * i]));
    }
    const double graph_error = graph_gap / 3.0;
    const double last = result.comparison.distances.back()[t_last];
    out.require(last <= 2.0 * graph_error,
                msg("distance(8) = ", last, " <= 2 x graph error ", 2.0 * graph_error));
    out.require(result.comparison.enclosure_ordered, "curves nested at all recorded times");
    return out;
}

// 11. sqrt(t) |A| scaling from corner data stabilizes under mesh refinement.
Outcome criterion_curvature_scaling() {
    Outcome out;
    const InitialDatum datum = builtin("abs");
    std::vector<double> sups;
    for (std::size_t n : {301u, 601u, 1201u}) {
        const Grid1D grid(-3.0, 3.0, n);
        FlowConfig flow;
        flow.t_end = 0.25;
        flow.snapshot_stride = 0;
        flow.record_times = logspace_times(0.01, 0.25, 12);
        const Trajectory traj = evolve(sample(datum.profile, grid), flow);
        sups.push_back(ecker_huisken_monitor(traj, 1.0).sup);
    }
    for (std::size_t k = 1; k < sups.size(); ++k) {
        const double ratio = sups[k] / sups[k - 1];
        out.require(ratio <= 1.2, msg("refinement ratio ", ratio, " <= 1.2"));
    }
    return out;
}

// 12. Sublevel gradient bound (M - u)_+^2 v <= M^2 c(M) + 10 h along the run.
Outcome criterion_sublevel_gradient_bound() {
    Outcome out;
    const double h = 0.0125;
    const InitialDatum cone = builtin("cone(1)");
    const Grid1D grid(-8.0, 8.0, 1281);
    const double cM = boundedcase_constant(cone, grid, 2.0).value;
    ScalarField u0 = sample(cone.profile, grid);
    FlowConfig flow;
    flow.t_end = 0.5;
    flow.snapshot_stride = 400;
    const Trajectory traj = evolve(u0, flow);
    const BoundedCaseReports reports = prop42_checks(traj, 2.0, cM, 10.0 * h, 10.0 * h);
    out.require(reports.reports[0].pass, msg("gradient-bound margin ", reports.reports[0].margin,
                                             " >= ", -10.0 * h, " (c(M) = ", cM, ")"));
    return out;
}

// 13. Shrinking-ball flow: the boundary follows the sphere law exactly and
// the outer-window minimum of a proper datum never decreases.
Outcome criterion_radial_subdomain() {
    Outcome out;
    const double R0 = 2.0;
    const int n_dim = 2;
    SubdomainConfig config;
    config.flow.t_end = 0.5;
    config.flow.snapshot_stride = 200;
    const auto profile = [R0](double r) {
        return -std::log(std::max(1e-300, 1.0 - (r / R0) * (r / R0)));
    };
    const RadialDomainState initial =
        make_radial_domain_state(R0, n_dim, 201, profile, config);
    const SubdomainTrajectory traj = evolve_radial_subdomain(initial, config);

    double law_gap = 0.0;
    for (const RadialDomainState& s : traj.states)
        law_gap = std::max(law_gap,
                           std::abs(s.boundary_radius - sphere_radius(R0, n_dim, s.time)));
    out.require(law_gap <= 1e-12, msg("boundary law gap ", law_gap, " <= 1e-12"));

    bool nondecreasing = true;
    for (std::size_t k = 1; k < traj.monitor.size(); ++k)
        if (traj.monitor[k].min_outer < traj.monitor[k - 1].min_outer - 1e-10)
            nondecreasing = false;
    out.require(nondecreasing, "outer-window minimum nondecreasing");
    return out;
}

struct Criterion {
    int id;
    const char* name;
    Outcome (*run)();
};

const Criterion kCriteria[] = {
    {1, "translator convergence", criterion_translator_convergence},
    {2, "cross-oracle equivalence", criterion_cross_oracle},
    {3, "arctan increment bound", criterion_arctan_bound},
    {4, "barrier lower bound", criterion_barrier},
    {5, "parabolic scaling symmetry", criterion_scaling_symmetry},
    {6, "uniqueness probe decay", criterion_uniqueness_probe},
    {7, "supersolution gap", criterion_supersolution_gap},
    {8, "curvature condition preservation", criterion_condition_preservation},
    {9, "harnack inequality", criterion_harnack},
    {10, "doubling convergence", criterion_doubling},
    {11, "curvature scaling monitor", criterion_curvature_scaling},
    {12, "sublevel gradient bound", criterion_sublevel_gradient_bound},
    {13, "radial subdomain", criterion_radial_subdomain},
};

}  // namespace

std::vector<int> fast_criteria() { return {1, 3, 5, 8}; }

std::vector<int> all_criteria() {
    std::vector<int> ids;
    for (const Criterion& c : kCriteria) ids.push_back(c.id);
    return ids;
}

CriterionResult run_criterion(int id) {
    for (const Criterion& c : kCriteria) {
        if (c.id != id) continue;
        CriterionResult result;
        result.id = c.id;
        result.name = c.name;
        const auto begin = std::chrono::steady_clock::now();
        try {
            Outcome out = c.run();
            result.pass = out.pass;
            result.detail = out.detail;
        } catch (const std::exception& e) {
            result.pass = false;
            result.detail = msg("exception: ", e.what());
        }
        result.seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - begin).count();
        return result;
    }
    throw InvalidArgument(msg("run_criterion: no criterion with id ", id));
}

std::vector<CriterionResult> run_acceptance(const std::vector<int>& ids) {
    std::vector<CriterionResult> results;
    for (int id : ids) results.push_back(run_criterion(id));
    return results;
}

}  // namespace mcflab
