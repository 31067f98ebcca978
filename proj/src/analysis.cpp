#include "mcflab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mcflab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct WorstTracker {
    double margin = kInf;
    std::size_t node = 0;
    double time = 0.0;

    void update(double value, std::size_t n, double t) {
        if (value < margin) {
            margin = value;
            node = n;
            time = t;
        }
    }
};

std::vector<double> node_coords(const GridVariant& grid) {
    const std::size_t n = grid_node_count(grid);
    std::vector<double> x(n);
    if (const auto* g = std::get_if<Grid1D>(&grid))
        for (std::size_t i = 0; i < n; ++i) x[i] = g->node(i);
    else if (const auto* g2 = std::get_if<RadialGrid>(&grid))
        for (std::size_t i = 0; i < n; ++i) x[i] = g2->node(i);
    else
        throw InvalidArgument("node_coords: tensor grids need per-axis coordinates");
    return x;
}

void require_same_line_grid(const Trajectory& a, const Trajectory& b, const char* who) {
    ensure(a.snapshots.size() == b.snapshots.size(),
           msg(who, ": trajectories have different snapshot counts"));
    ensure(grid_node_count(a.initial().grid) == grid_node_count(b.initial().grid),
           msg(who, ": trajectories on different grids"));
    for (std::size_t k = 0; k < a.snapshots.size(); ++k)
        ensure(std::abs(a.snapshots[k].time - b.snapshots[k].time) <= 1e-12,
               msg(who, ": snapshot times differ at index ", k));
}

// First derivative of a snapshot with one-sided ends; the decay functional
// only reads it where the cutoff is supported, away from the boundary.
std::vector<double> slope_field(const ScalarField& f) {
    const std::size_t n = f.values.size();
    const double h = grid_spacing(f.grid);
    const bool radial = std::holds_alternative<RadialGrid>(f.grid);
    std::vector<double> s(n);
    for (std::size_t i = 1; i + 1 < n; ++i) s[i] = (f.values[i + 1] - f.values[i - 1]) / (2.0 * h);
    s[0] = radial ? 0.0 : (f.values[1] - f.values[0]) / h;
    s[n - 1] = (f.values[n - 1] - f.values[n - 2]) / h;
    return s;
}

}  // namespace

InvariantReport InvariantReport::from_margin(std::string check, double margin, std::size_t node,
                                             double t, double tolerance, std::string anchor) {
    InvariantReport r;
    r.check = std::move(check);
    r.margin = margin;
    r.worst_node = node;
    r.worst_time = t;
    r.tolerance = tolerance;
    r.pass = margin >= -tolerance;
    r.anchor = std::move(anchor);
    return r;
}

ArctanBoundResult lemma21_check(double v1, double v2, double gamma) {
    ensure(v1 >= 0.0 && v2 >= 0.0, "lemma21_check: arguments must be nonnegative");
    ensure(gamma > 0.0 && gamma <= 1.0, "lemma21_check: gamma must lie in (0, 1]");
    ArctanBoundResult r;
    r.lhs = std::max(0.0, std::atan(v1) - std::atan(v2));
    r.rhs = 2.0 * std::pow(std::max(0.0, v1 - v2), gamma);
    r.holds = r.lhs <= r.rhs;
    return r;
}

double CutoffSpec::eval(double rho) const {
    const double a = std::abs(rho);
    if (a <= 1.0) return 1.0;
    if (a >= 2.0) return 0.0;
    const double s = a - 1.0;
    return 1.0 - s * s * s * (10.0 - 15.0 * s + 6.0 * s * s);
}

double cutoff_weighted_integral(const CutoffSpec& cutoff, double gamma,
                                std::size_t quadrature_points) {
    ensure(gamma > 0.0 && gamma <= 0.5, "cutoff_weighted_integral: diagnostic for gamma <= 1/2");
    // Midpoint rule on [1, 2] with psi'' from centered differences of psi.
    const double p = 1.0 / (1.0 - gamma);
    const double q = gamma / (1.0 - gamma);
    const double dr = 1.0 / static_cast<double>(quadrature_points);
    const double fd = 1e-5;
    double total = 0.0;
    for (std::size_t k = 0; k < quadrature_points; ++k) {
        const double rho = 1.0 + (static_cast<double>(k) + 0.5) * dr;
        const double psi = cutoff.eval(rho);
        if (psi <= 0.0) continue;
        const double psi2 =
            (cutoff.eval(rho + fd) - 2.0 * psi + cutoff.eval(rho - fd)) / (fd * fd);
        total += std::pow(std::abs(psi2), p) * std::pow(psi, -q) * dr;
    }
    return total;
}

HPFunctionalSeries hp_functional(const Trajectory& a, const Trajectory& b, double gamma,
                                 double R, const CutoffSpec& cutoff) {
    ensure(gamma > 0.0 && gamma < 1.0, "hp_functional: gamma must lie in (0, 1)");
    ensure(R > 0.0, "hp_functional: cutoff scale must be positive");
    require_same_line_grid(a, b, "hp_functional");

    HPFunctionalSeries out;
    out.gamma = gamma;
    out.cutoff_scale = R;

    const GridVariant& grid = a.initial().grid;
    const bool radial = std::holds_alternative<RadialGrid>(grid);
    out.radial = radial;
    out.ambient_dim = radial ? std::get<RadialGrid>(grid).ambient_dim : 1;
    const std::vector<double> x = node_coords(grid);
    const double h = grid_spacing(grid);
    if (radial)
        ensure(2.0 * R <= x.back(), "hp_functional: cutoff support exceeds the window");
    else
        ensure(-2.0 * R >= x.front() && 2.0 * R <= x.back(),
               "hp_functional: cutoff support exceeds the window");

    const double nm1 = static_cast<double>(out.ambient_dim - 1);
    for (std::size_t k = 0; k < a.snapshots.size(); ++k) {
        const double t = a.snapshots[k].time;
        const std::vector<double> v1 = slope_field(a.snapshots[k]);
        const std::vector<double> v2 = slope_field(b.snapshots[k]);
        double integral = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double w = std::max(0.0, v1[i] - v2[i]);
            double phi;
            double weight = 1.0;
            if (radial) {
                phi = cutoff.eval((x[i] * x[i] + 2.0 * nm1 * t) / (R * R));
                weight = std::pow(x[i], nm1);
            } else {
                phi = cutoff.eval(x[i] / R);
            }
            const double trap = (i == 0 || i + 1 == x.size()) ? 0.5 : 1.0;
            integral += trap * w * phi * weight * h;
        }
        out.times.push_back(t);
        out.values.push_back(integral);
    }
    return out;
}

InvariantReport barrier_check(const Trajectory& traj, const BarrierSpec& spec,
                              double tolerance) {
    ensure(spec.R > 0.0, "barrier_check: R must be positive");
    const GridVariant& grid = traj.initial().grid;
    ensure(!std::holds_alternative<TensorGrid2D>(grid),
           "barrier_check: 1D or radial trajectories only");
    const std::vector<double> x = node_coords(grid);
    const bool radial = std::holds_alternative<RadialGrid>(grid);
    const int n_dim = radial ? std::get<RadialGrid>(grid).ambient_dim : 1;
    double x0 = 0.0;
    if (!spec.x0_spatial.empty()) x0 = spec.x0_spatial.front();
    if (radial)
        ensure(x0 == 0.0, "barrier_check: radial trajectories need an axis-centered ball");

    const auto dist2 = [&](double xi, double ui) {
        const double dx = xi - x0;
        const double du = ui - spec.x0_height;
        return dx * dx + du * du;
    };

    // Hypothesis scan at t = 0: u0 >= C on the ball of radius R.
    const ScalarField& u0 = traj.initial();
    std::string violators;
    std::size_t n_violators = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (dist2(x[i], u0.values[i]) <= spec.R * spec.R && u0.values[i] < spec.C) {
            if (n_violators < 8) violators += msg(" ", i);
            ++n_violators;
        }
    }
    ensure(n_violators == 0, msg("barrier_check: u0 < C on the initial ball at ", n_violators,
                                 " node(s):", violators));

    WorstTracker worst;
    const double half_R2 = 0.5 * spec.R * spec.R;
    for (const ScalarField& snap : traj.snapshots) {
        const double t = snap.time;
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (dist2(x[i], snap.values[i]) + 2.0 * n_dim * t > half_R2) continue;
            const double threshold = spec.C - 10.0 * t / spec.R;
            worst.update(snap.values[i] - threshold, i, t);
        }
    }
    ensure(std::isfinite(worst.margin), "barrier_check: parabolic ball contains no node");
    return InvariantReport::from_margin(
        "barrier_lower_bound", worst.margin, worst.node, worst.time, tolerance,
        "u(x,t) >= C - (10/R) t on |X-X0|^2 + 2nt <= R^2/2");
}

PropernessSeries properness_monitor(const Trajectory& traj, const std::vector<double>& levels) {
    const std::vector<double> x = node_coords(traj.initial().grid);
    PropernessSeries out;
    out.levels = levels;
    for (const ScalarField& snap : traj.snapshots) out.times.push_back(snap.time);
    out.min_values.assign(levels.size(), std::vector<double>(traj.snapshots.size(), kInf));
    for (std::size_t l = 0; l < levels.size(); ++l)
        for (std::size_t k = 0; k < traj.snapshots.size(); ++k) {
            double m = kInf;
            for (std::size_t i = 0; i < x.size(); ++i)
                if (std::abs(x[i]) >= levels[l]) m = std::min(m, traj.snapshots[k].values[i]);
            out.min_values[l][k] = m;
        }
    out.monotone_in_level = true;
    for (std::size_t l = 1; l < levels.size() && out.monotone_in_level; ++l)
        for (std::size_t k = 0; k < traj.snapshots.size(); ++k)
            if (out.min_values[l][k] < out.min_values[l - 1][k] - 1e-12) {
                out.monotone_in_level = false;
                break;
            }
    return out;
}

BoundedCaseReports prop42_checks(const Trajectory& traj, double M, double cM,
                                 double tol_gradient, double tol_curvature) {
    ensure(cM > 0.0 && std::isfinite(cM),
           "prop42_checks: the bounded-slope condition is violated (c(M) flagged infinite)");
    ensure(M > 0.0, "prop42_checks: M must be positive");
    const std::size_t n = grid_node_count(traj.initial().grid);
    ensure(!std::holds_alternative<TensorGrid2D>(traj.initial().grid),
           "prop42_checks: 1D or radial trajectories only");
    const bool radial = std::holds_alternative<RadialGrid>(traj.initial().grid);
    const std::size_t lo = radial ? 0 : kInteriorMargin;

    BoundedCaseReports out;
    out.k = 1.0 / (2.0 * M * M * cM);
    const double k_inv = 1.0 / out.k;
    const double rhs_gradient = M * M * cM;
    const double rhs_curvature = std::max(cM * M * M, k_inv * (3.0 + k_inv) * M);
    const double rhs_time_weighted = 2.0 * k_inv * (3.0 + k_inv) * M + M * M;

    // Hypothesis of the curvature bound: |A|^2 <= c(M) on {u0 <= M} at t = 0.
    {
        const GeometricData g0 = compute_geometry(traj.initial(), traj.policy);
        out.initial_curvature_bound_met = true;
        for (std::size_t i = lo; i + kInteriorMargin < n; ++i)
            if (traj.initial().values[i] <= M && g0.A2[i] > cM) {
                out.initial_curvature_bound_met = false;
                break;
            }
    }

    WorstTracker w_grad, w_curv, w_time;
    for (const ScalarField& snap : traj.snapshots) {
        ensure_runtime(*std::min_element(snap.values.begin(), snap.values.end()) >= -1e-12,
                       "prop42_checks: run must be shifted so u >= 0");
        const GeometricData g = compute_geometry(snap, traj.policy);
        const double t = snap.time;
        for (std::size_t i = lo; i + kInteriorMargin < n; ++i) {
            const double gap = std::max(0.0, M - snap.values[i]);
            w_grad.update(rhs_gradient - gap * gap * g.v[i], i, t);
            w_curv.update(rhs_curvature - g.A2[i] * gap * gap, i, t);
            w_time.update(rhs_time_weighted - t * g.A2[i] * gap * gap, i, t);
        }
    }
    out.reports[0] = InvariantReport::from_margin(
        "sublevel_gradient_bound", w_grad.margin, w_grad.node, w_grad.time, tol_gradient,
        "(M-u)_+^2 v <= M^2 c(M)");
    if (out.initial_curvature_bound_met) {
        out.reports[1] = InvariantReport::from_margin(
            "sublevel_curvature_bound", w_curv.margin, w_curv.node, w_curv.time, tol_curvature,
            "|A|^2 (M-u)_+^2 <= max(c(M) M^2, k^{-1}(3+k^{-1}) M), k = 1/(2 M^2 c(M))");
    } else {
        // Vacuous: the bound is only claimed under the initial curvature
        // hypothesis, which this datum does not satisfy.
        out.reports[1] = InvariantReport::from_margin(
            "sublevel_curvature_bound (vacuous: initial |A|^2 <= c(M) fails)", 0.0, 0, 0.0,
            tol_curvature, "|A|^2 (M-u)_+^2 <= max(c(M) M^2, k^{-1}(3+k^{-1}) M)");
    }
    out.reports[2] = InvariantReport::from_margin(
        "sublevel_time_weighted_curvature_bound", w_time.margin, w_time.node, w_time.time,
        tol_curvature, "t |A|^2 (M-u)_+^2 <= 2 k^{-1}(3+k^{-1}) M + M^2");
    return out;
}

ConditionMonitorResult condition_c_monitor(const Trajectory& traj, double c, double tolerance) {
    const std::size_t n = grid_node_count(traj.initial().grid);
    ConditionMonitorResult out;
    WorstTracker worst;
    for (const ScalarField& snap : traj.snapshots) {
        const GeometricData g = compute_geometry(snap, traj.policy);
        double min_lam = kInf;
        std::size_t min_node = 0;
        auto visit = [&](std::size_t i) {
            if (g.lam_min_vh[i] < min_lam) {
                min_lam = g.lam_min_vh[i];
                min_node = i;
            }
        };
        if (const auto* tg = std::get_if<TensorGrid2D>(&snap.grid)) {
            for (std::size_t j = kInteriorMargin; j + kInteriorMargin < tg->ny; ++j)
                for (std::size_t i = kInteriorMargin; i + kInteriorMargin < tg->nx; ++i)
                    visit(tg->flat(i, j));
        } else {
            const bool radial = std::holds_alternative<RadialGrid>(snap.grid);
            for (std::size_t i = radial ? 0 : kInteriorMargin; i + kInteriorMargin < n; ++i)
                visit(i);
        }
        out.times.push_back(snap.time);
        out.min_lam_vh.push_back(min_lam);
        worst.update(min_lam + c, min_node, snap.time);
    }
    out.min_nondecreasing = true;
    for (std::size_t k = 1; k < out.min_lam_vh.size(); ++k)
        if (out.min_lam_vh[k] < out.min_lam_vh[k - 1] - tolerance) {
            out.min_nondecreasing = false;
            break;
        }
    out.report = InvariantReport::from_margin("curvature_condition", worst.margin, worst.node,
                                              worst.time, tolerance, "v h^i_j >= -c delta^i_j");
    return out;
}

SupersolutionGapResult supersolution_gap(const Trajectory& a, const Trajectory& b, double eps,
                                         double c) {
    ensure(eps > 0.0, "supersolution_gap: eps must be positive");
    require_same_line_grid(a, b, "supersolution_gap");
    for (const Trajectory* t : {&a, &b})
        ensure(*std::min_element(t->initial().values.begin(), t->initial().values.end()) >=
                   1.0 - 1e-12,
               "supersolution_gap: runs must be shifted so u >= 1");

    SupersolutionGapResult out;
    const double T = std::min(a.snapshots.back().time, b.snapshots.back().time);
    out.T_star = std::min(T, 0.25);
    if (c > 0.0) out.T_star = std::min(out.T_star, 1.0 / (10.0 * c));

    const std::size_t n = grid_node_count(a.initial().grid);
    const bool radial = std::holds_alternative<RadialGrid>(a.initial().grid);
    const std::size_t lo = radial ? 0 : kInteriorMargin;
    double max_W = -kInf;
    for (std::size_t k = 0; k < a.snapshots.size(); ++k) {
        const double t = a.snapshots[k].time;
        if (t <= 0.0 || t > out.T_star * (1.0 + 1e-12)) continue;
        const auto& u = a.snapshots[k].values;
        const auto& ub = b.snapshots[k].values;
        for (std::size_t i = lo; i + kInteriorMargin < n; ++i) {
            const double W = u[i] - ub[i] - eps * (t + eps) * u[i] * u[i];
            if (W > max_W) {
                max_W = W;
                out.worst_node = i;
                out.worst_time = t;
            }
        }
    }
    ensure(std::isfinite(max_W), "supersolution_gap: no snapshots in (0, T*]");
    out.max_W = max_W;
    return out;
}

CurvatureScalingResult ecker_huisken_monitor(const Trajectory& traj, double window) {
    const std::vector<double> x = node_coords(traj.initial().grid);
    const bool radial = std::holds_alternative<RadialGrid>(traj.initial().grid);
    const std::size_t n = x.size();
    const std::size_t lo = radial ? 0 : kInteriorMargin;
    CurvatureScalingResult out;
    for (const ScalarField& snap : traj.snapshots) {
        if (snap.time <= 0.0) continue;
        const GeometricData g = compute_geometry(snap, traj.policy);
        double max_a = 0.0;
        for (std::size_t i = lo; i + kInteriorMargin < n; ++i)
            if (std::abs(x[i]) <= window) max_a = std::max(max_a, std::sqrt(g.A2[i]));
        const double value = std::sqrt(snap.time) * max_a;
        out.times.push_back(snap.time);
        out.values.push_back(value);
        out.sup = std::max(out.sup, value);
    }
    return out;
}

InvariantReport harnack_monitor(const Trajectory& traj, double t_start, double tolerance) {
    ensure(t_start > 0.0, "harnack_monitor: t_start must be positive");
    const std::size_t n = grid_node_count(traj.initial().grid);
    const bool radial = std::holds_alternative<RadialGrid>(traj.initial().grid);
    const std::size_t lo = radial ? 0 : kInteriorMargin;
    WorstTracker worst;
    for (std::size_t k = 1; k + 1 < traj.snapshots.size(); ++k) {
        if (traj.snapshots[k].time < t_start) continue;
        const HarnackEvaluator eval(traj.snapshots[k - 1], traj.snapshots[k],
                                    traj.snapshots[k + 1], traj.policy);
        for (std::size_t i = lo; i + kInteriorMargin < n; ++i) {
            const double z = eval.strictly_convex(i) ? eval.minimized(i)
                                                     : eval.at(i, TangentVector{});
            worst.update(z, i, eval.time());
        }
    }
    ensure(std::isfinite(worst.margin),
           "harnack_monitor: no interior snapshot triple with t >= t_start");
    return InvariantReport::from_margin(
        "harnack_differential_inequality", worst.margin, worst.node, worst.time, tolerance,
        "dH/dt + 2<grad H, V> + h(V,V) + H/(2t) >= 0");
}

std::vector<double> lower_part_as_graph(const ClosedCurve& curve, double height,
                                        const std::vector<double>& x_nodes) {
    const std::size_t n = curve.points.size();
    // Collect the maximal cyclic arc strictly below the height line. For a
    // convex curve symmetric about x2 = height there is exactly one.
    std::size_t start = n;
    for (std::size_t i = 0; i < n; ++i) {
        const bool below = curve.points[i].y < height;
        const bool prev_below = curve.points[(i + n - 1) % n].y < height;
        if (below && !prev_below) {
            start = i;
            break;
        }
    }
    ensure(start < n, "lower_part_as_graph: curve has no arc below the height line");
    std::vector<Vec2> arc;
    for (std::size_t k = 0; k < n; ++k) {
        const Vec2& p = curve.points[(start + k) % n];
        if (p.y >= height) break;
        arc.push_back(p);
    }
    ensure(arc.size() >= 2, "lower_part_as_graph: lower arc too short");
    if (arc.front().x > arc.back().x) std::reverse(arc.begin(), arc.end());
    for (std::size_t i = 1; i < arc.size(); ++i)
        ensure(arc[i].x > arc[i - 1].x,
               "lower_part_as_graph: lower arc is not graphical (x not monotone)");

    std::vector<double> values(x_nodes.size());
    std::size_t seg = 0;
    for (std::size_t k = 0; k < x_nodes.size(); ++k) {
        const double x = x_nodes[k];
        ensure(x >= arc.front().x && x <= arc.back().x,
               msg("lower_part_as_graph: window point ", x, " outside the lower arc"));
        while (seg + 2 < arc.size() && arc[seg + 1].x < x) ++seg;
        const double w = (x - arc[seg].x) / (arc[seg + 1].x - arc[seg].x);
        values[k] = (1.0 - w) * arc[seg].y + w * arc[seg + 1].y;
    }
    return values;
}

DoublingComparison doubling_comparison(const Trajectory& graph_traj,
                                       const std::vector<CurveTrajectory>& curve_trajs,
                                       const std::vector<double>& heights, double window,
                                       const std::vector<double>& times) {
    ensure(curve_trajs.size() == heights.size(),
           "doubling_comparison: one curve trajectory per height");
    const auto* grid = std::get_if<Grid1D>(&graph_traj.initial().grid);
    ensure(grid != nullptr, "doubling_comparison: graph trajectory must be 1D");

    std::vector<double> x_window;
    std::vector<std::size_t> idx_window;
    for (std::size_t i = 0; i < grid->n_nodes; ++i)
        if (std::abs(grid->node(i)) <= window) {
            x_window.push_back(grid->node(i));
            idx_window.push_back(i);
        }
    ensure(!x_window.empty(), "doubling_comparison: window contains no grid node");

    DoublingComparison out;
    out.heights = heights;
    out.times = times;
    out.distances.assign(heights.size(), std::vector<double>(times.size(), 0.0));

    for (std::size_t hi = 0; hi < heights.size(); ++hi)
        for (std::size_t ti = 0; ti < times.size(); ++ti) {
            const double t = times[ti];
            const ScalarField& snap = graph_traj.snapshots[graph_traj.snapshot_at(t)];
            const ClosedCurve& curve =
                curve_trajs[hi].snapshots[curve_trajs[hi].snapshot_at(t)];
            std::vector<double> curve_u;
            try {
                curve_u = lower_part_as_graph(curve, heights[hi], x_window);
            } catch (const InvalidArgument& e) {
                throw InvalidArgument(
                    msg("doubling_comparison: height ", heights[hi], ": ", e.what()));
            }
            double sup = 0.0;
            for (std::size_t k = 0; k < x_window.size(); ++k)
                sup = std::max(sup, std::abs(curve_u[k] - snap.values[idx_window[k]]));
            out.distances[hi][ti] = sup;
        }

    out.monotone_in_height = true;
    for (std::size_t hi = 1; hi < heights.size() && out.monotone_in_height; ++hi)
        for (std::size_t ti = 0; ti < times.size(); ++ti)
            if (out.distances[hi][ti] >= out.distances[hi - 1][ti]) {
                out.monotone_in_height = false;
                break;
            }

    out.enclosure_ordered = true;
    const double tol = 1e-9;
    for (std::size_t hi = 1; hi < heights.size() && out.enclosure_ordered; ++hi)
        for (std::size_t ti = 0; ti < times.size(); ++ti) {
            const ClosedCurve& inner =
                curve_trajs[hi - 1].snapshots[curve_trajs[hi - 1].snapshot_at(times[ti])];
            const ClosedCurve& outer =
                curve_trajs[hi].snapshots[curve_trajs[hi].snapshot_at(times[ti])];
            if (!encloses(outer, inner, tol)) {
                out.enclosure_ordered = false;
                break;
            }
        }
    return out;
}

}  // namespace mcflab
