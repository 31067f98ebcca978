#include "mcflab/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mcflab {

namespace {

void validate_config(const ScalarField& field, const FlowConfig& config) {
    ensure(config.cfl > 0.0 && config.cfl <= 1.0, msg("FlowConfig: cfl out of (0,1]: ", config.cfl));
    ensure(config.t_end >= 0.0, "FlowConfig: negative t_end");
    if (config.form == CsfForm::Divergence)
        ensure(std::holds_alternative<Grid1D>(field.grid),
               "FlowConfig: divergence form is 1D only");
}

struct StepWorkspace {
    Derivatives d;
    std::vector<double> rhs;
    std::vector<double> stage;
    std::vector<double> rhs2;
    std::vector<double> faces;  // divergence form: arctan of face slopes
};

// Ghost pair for a 1D/radial value array at stage time t.
struct GhostPair {
    double left;
    double right;
};

GhostPair stage_ghosts(const std::vector<double>& u, const GridVariant& grid,
                       const FlowConfig& config, double t) {
    if (config.dirichlet_exact) {
        if (const auto* g = std::get_if<Grid1D>(&grid))
            return {config.dirichlet_exact(g->x_min - g->h, t),
                    config.dirichlet_exact(g->x_max + g->h, t)};
        const auto* g = std::get_if<RadialGrid>(&grid);
        return {u[1], config.dirichlet_exact(g->r_max + g->h, t)};
    }
    const ScalarField view(grid, u, std::max(t, 0.0));
    const GhostValues gv = extend_ghost(view, config.policy, 1);
    return {gv.left[0], gv.right[0]};
}

// RHS of the non-divergence 1D form: u_xx / (1 + u_x^2).
void rhs_csf_nondiv(const std::vector<double>& u, const Grid1D& g, GhostPair ghost,
                    std::vector<double>& rhs) {
    const std::size_t n = u.size();
    const double inv2h = 1.0 / (2.0 * g.h), invh2 = 1.0 / (g.h * g.h);
    for (std::size_t i = 0; i < n; ++i) {
        const double um = i == 0 ? ghost.left : u[i - 1];
        const double up = i == n - 1 ? ghost.right : u[i + 1];
        const double ux = (up - um) * inv2h;
        const double uxx = (up - 2.0 * u[i] + um) * invh2;
        rhs[i] = uxx / (1.0 + ux * ux);
    }
}

// RHS of the divergence 1D form: conservative difference of arctan of the
// face slopes.
void rhs_csf_div(const std::vector<double>& u, const Grid1D& g, GhostPair ghost,
                 std::vector<double>& faces, std::vector<double>& rhs) {
    const std::size_t n = u.size();
    faces.resize(n + 1);
    const double invh = 1.0 / g.h;
    faces[0] = std::atan((u[0] - ghost.left) * invh);
    for (std::size_t i = 1; i < n; ++i) faces[i] = std::atan((u[i] - u[i - 1]) * invh);
    faces[n] = std::atan((ghost.right - u[n - 1]) * invh);
    for (std::size_t i = 0; i < n; ++i) rhs[i] = (faces[i + 1] - faces[i]) * invh;
}

// RHS of the radial equation; at r = 0 the angular term has its symmetric
// limit and u_t(0) = n * u_rr(0).
void rhs_radial(const std::vector<double>& u, const RadialGrid& g, GhostPair ghost,
                std::vector<double>& rhs) {
    const std::size_t n = u.size();
    const double inv2h = 1.0 / (2.0 * g.h), invh2 = 1.0 / (g.h * g.h);
    const double nm1 = static_cast<double>(g.ambient_dim - 1);
    rhs[0] = static_cast<double>(g.ambient_dim) * 2.0 * (u[1] - u[0]) * invh2;
    for (std::size_t i = 1; i < n; ++i) {
        const double um = u[i - 1];
        const double up = i == n - 1 ? ghost.right : u[i + 1];
        const double ur = (up - um) * inv2h;
        const double urr = (up - 2.0 * u[i] + um) * invh2;
        rhs[i] = urr / (1.0 + ur * ur) + nm1 * ur / g.node(i);
    }
}

void rhs_full2d(const std::vector<double>& u, const TensorGrid2D& g, const FlowConfig& config,
                double t, std::vector<double>& rhs) {
    ensure(!config.dirichlet_exact, "step_full2d: exact Dirichlet ghosts not supported in 2D");
    const ScalarField view(g, u, std::max(t, 0.0));
    const PaddedField2D p = pad_field_2d(view, config.policy, 1);
    const double i2hx = 1.0 / (2.0 * g.hx), i2hy = 1.0 / (2.0 * g.hy);
    const double ihx2 = 1.0 / (g.hx * g.hx), ihy2 = 1.0 / (g.hy * g.hy);
    const double ihxy = i2hx * i2hy;
    for (std::size_t j = 0; j < g.ny; ++j)
        for (std::size_t i = 0; i < g.nx; ++i) {
            const auto ii = static_cast<std::ptrdiff_t>(i);
            const auto jj = static_cast<std::ptrdiff_t>(j);
            const double c = p.at(ii, jj);
            const Vec2 du{(p.at(ii + 1, jj) - p.at(ii - 1, jj)) * i2hx,
                          (p.at(ii, jj + 1) - p.at(ii, jj - 1)) * i2hy};
            const double uxx = (p.at(ii + 1, jj) - 2.0 * c + p.at(ii - 1, jj)) * ihx2;
            const double uyy = (p.at(ii, jj + 1) - 2.0 * c + p.at(ii, jj - 1)) * ihy2;
            const double uxy = (p.at(ii + 1, jj + 1) - p.at(ii + 1, jj - 1) -
                                p.at(ii - 1, jj + 1) + p.at(ii - 1, jj - 1)) *
                               ihxy;
            const Sym2 a = diffusion_matrix(du);
            rhs[g.flat(i, j)] = a.xx * uxx + a.yy * uyy + 2.0 * a.xy * uxy;
        }
}

void eval_rhs(const std::vector<double>& u, const GridVariant& grid, const FlowConfig& config,
              double t, StepWorkspace& ws) {
    ws.rhs.resize(u.size());
    if (const auto* g1 = std::get_if<Grid1D>(&grid)) {
        const GhostPair ghost = stage_ghosts(u, grid, config, t);
        if (config.form == CsfForm::Divergence)
            rhs_csf_div(u, *g1, ghost, ws.faces, ws.rhs);
        else
            rhs_csf_nondiv(u, *g1, ghost, ws.rhs);
        return;
    }
    if (const auto* gr = std::get_if<RadialGrid>(&grid)) {
        const GhostPair ghost = stage_ghosts(u, grid, config, t);
        rhs_radial(u, *gr, ghost, ws.rhs);
        return;
    }
    rhs_full2d(u, std::get<TensorGrid2D>(grid), config, t, ws.rhs);
}

// One full step of the configured scheme, in place. Returns the new time.
double advance(std::vector<double>& u, const GridVariant& grid, const FlowConfig& config,
               double t, double dt, StepWorkspace& ws) {
    eval_rhs(u, grid, config, t, ws);
    if (config.scheme == Scheme::ExplicitEuler) {
        for (std::size_t i = 0; i < u.size(); ++i) u[i] += dt * ws.rhs[i];
        return t + dt;
    }
    ws.stage.resize(u.size());
    ws.rhs2.resize(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) ws.stage[i] = u[i] + dt * ws.rhs[i];
    std::swap(ws.rhs, ws.rhs2);  // keep stage-1 slopes in rhs2
    eval_rhs(ws.stage, grid, config, t + dt, ws);
    for (std::size_t i = 0; i < u.size(); ++i) u[i] += 0.5 * dt * (ws.rhs2[i] + ws.rhs[i]);
    return t + dt;
}

void check_finite(const std::vector<double>& u, std::size_t step) {
    for (std::size_t i = 0; i < u.size(); ++i)
        ensure_runtime(std::isfinite(u[i]),
                       msg("flow step ", step, ": non-finite update at node ", i));
}

MonitorRow monitor_row(const ScalarField& field, const FarFieldPolicy& policy) {
    const GeometricData g = compute_geometry(field, policy);
    MonitorRow row;
    row.t = field.time;
    row.min_u = *std::min_element(field.values.begin(), field.values.end());
    const std::size_t n = g.v.size();
    for (std::size_t i = 0; i < n; ++i)
        row.max_slope = std::max(row.max_slope, std::sqrt(g.v[i] * g.v[i] - 1.0));
    // Interior-only curvature stats; the margin keeps ghost effects out.
    double max_a2 = 0.0;
    double min_lam = std::numeric_limits<double>::infinity();
    auto visit_interior = [&](std::size_t i) {
        max_a2 = std::max(max_a2, g.A2[i]);
        min_lam = std::min(min_lam, g.lam_min_vh[i]);
    };
    if (const auto* tg = std::get_if<TensorGrid2D>(&field.grid)) {
        for (std::size_t j = kInteriorMargin; j + kInteriorMargin < tg->ny; ++j)
            for (std::size_t i = kInteriorMargin; i + kInteriorMargin < tg->nx; ++i)
                visit_interior(tg->flat(i, j));
    } else {
        const bool radial = std::holds_alternative<RadialGrid>(field.grid);
        const std::size_t lo = radial ? 0 : kInteriorMargin;  // the origin is not a truncation
        for (std::size_t i = lo; i + kInteriorMargin < n; ++i) visit_interior(i);
    }
    row.max_curv = std::sqrt(max_a2);
    row.min_lam_vh = std::isfinite(min_lam) ? min_lam : 0.0;
    return row;
}

}  // namespace

double stable_dt(const ScalarField& field, const FlowConfig& config, double remaining) {
    const double h = grid_spacing(field.grid);
    const int dim = grid_cfl_dim(field.grid);
    // Diffusion eigenvalues are at most 1 for every form, so h^2 / (2 dim)
    // bounds the explicit step; the divergence-form flux slope 1/(1+s^2) <= 1
    // gives the same bound with dim = 1.
    const double dt = config.cfl * h * h / (2.0 * static_cast<double>(dim));
    return std::min(dt, remaining);
}

double stable_dt(const ScalarField& field, const FlowConfig& config) {
    return stable_dt(field, config, std::max(0.0, config.t_end - field.time));
}

namespace {

ScalarField single_step(const ScalarField& field, double dt, const FlowConfig& config) {
    validate_config(field, config);
    ensure(dt > 0.0, "step: dt must be positive");
    const double h = grid_spacing(field.grid);
    const double cap = config.cfl * h * h / (2.0 * grid_cfl_dim(field.grid));
    ensure(dt <= cap * (1.0 + 1e-12), msg("step: dt ", dt, " exceeds stable step ", cap));
    StepWorkspace ws;
    std::vector<double> u = field.values;
    const double t_new = advance(u, field.grid, config, field.time, dt, ws);
    check_finite(u, 0);
    return ScalarField(field.grid, std::move(u), t_new);
}

}  // namespace

ScalarField step_csf(const ScalarField& field, double dt, const FlowConfig& config) {
    ensure(std::holds_alternative<Grid1D>(field.grid), "step_csf: field is not on a 1D grid");
    return single_step(field, dt, config);
}

ScalarField step_radial(const ScalarField& field, double dt, const FlowConfig& config) {
    ensure(std::holds_alternative<RadialGrid>(field.grid),
           "step_radial: field is not on a radial grid");
    return single_step(field, dt, config);
}

ScalarField step_full2d(const ScalarField& field, double dt, const FlowConfig& config) {
    ensure(std::holds_alternative<TensorGrid2D>(field.grid),
           "step_full2d: field is not on a tensor grid");
    return single_step(field, dt, config);
}

std::size_t Trajectory::snapshot_at(double t, double tol) const {
    for (std::size_t k = 0; k < snapshots.size(); ++k)
        if (std::abs(snapshots[k].time - t) <= tol) return k;
    throw InvalidArgument(msg("Trajectory: no snapshot at t = ", t));
}

Trajectory evolve(const ScalarField& initial, const FlowConfig& config) {
    validate_config(initial, config);
    ensure(initial.time == 0.0, "evolve: initial snapshot must be at t = 0");
    for (std::size_t k = 1; k < config.record_times.size(); ++k)
        ensure(config.record_times[k] > config.record_times[k - 1],
               "evolve: record_times must be ascending");

    Trajectory traj;
    traj.policy = config.policy;
    traj.snapshots.push_back(initial);
    traj.monitor.push_back(monitor_row(initial, config.policy));

    std::vector<double> u = initial.values;
    double t = 0.0;
    std::size_t step = 0;
    std::size_t next_record = 0;
    while (next_record < config.record_times.size() && config.record_times[next_record] <= 0.0)
        ++next_record;
    StepWorkspace ws;
    const double t_end = config.t_end;
    const double h = grid_spacing(initial.grid);
    const double dt_cap = config.cfl * h * h / (2.0 * grid_cfl_dim(initial.grid));

    while (t < t_end * (1.0 - 1e-14) && t_end > 0.0) {
        double dt = std::min(dt_cap, t_end - t);
        bool hit_record = false;
        if (next_record < config.record_times.size()) {
            const double gap = config.record_times[next_record] - t;
            if (gap <= dt * (1.0 + 1e-12)) {
                dt = gap;
                hit_record = true;
            }
        }
        try {
            t = advance(u, initial.grid, config, t, dt, ws);
        } catch (const RuntimeFailure& e) {
            throw RuntimeFailure(msg("evolve: step ", step + 1, ": ", e.what()));
        }
        if (hit_record) t = config.record_times[next_record];  // land exactly
        ++step;
        check_finite(u, step);

        const ScalarField current(initial.grid, u, t);
        traj.monitor.push_back(monitor_row(current, config.policy));
        const bool at_end = t >= t_end * (1.0 - 1e-14);
        if (hit_record || at_end || (config.snapshot_stride > 0 && step % config.snapshot_stride == 0))
            traj.snapshots.push_back(current);
        if (hit_record) ++next_record;
    }
    return traj;
}

}  // namespace mcflab
