#include "mcflab/subdomain.hpp"

#include <algorithm>
#include <cmath>

namespace mcflab {

double extinction_time(double initial_radius, int ambient_dim) {
    ensure(ambient_dim >= 2, "extinction_time: ambient dimension must be >= 2");
    return initial_radius * initial_radius / (2.0 * static_cast<double>(ambient_dim - 1));
}

double sphere_radius(double initial_radius, int ambient_dim, double t) {
    const double r2 =
        initial_radius * initial_radius - 2.0 * static_cast<double>(ambient_dim - 1) * t;
    ensure(r2 > 0.0, msg("sphere_radius: extinct at t = ", t));
    return std::sqrt(r2);
}

double cubic_interp_uniform(const std::vector<double>& values, double h, double x) {
    const std::size_t n = values.size();
    ensure(n >= 4, "cubic_interp_uniform: need at least 4 values");
    const double pos = x / h;
    auto base = static_cast<std::ptrdiff_t>(std::floor(pos)) - 1;
    base = std::clamp<std::ptrdiff_t>(base, 0, static_cast<std::ptrdiff_t>(n) - 4);
    const double s = pos - static_cast<double>(base);  // in [0, 3] over the stencil
    double result = 0.0;
    for (int k = 0; k < 4; ++k) {
        double w = 1.0;
        for (int m = 0; m < 4; ++m)
            if (m != k) w *= (s - m) / static_cast<double>(k - m);
        result += w * values[static_cast<std::size_t>(base) + static_cast<std::size_t>(k)];
    }
    return result;
}

namespace {

double effective_margin(const SubdomainConfig& config, std::size_t n_nodes) {
    if (config.margin_fraction > 0.0) return config.margin_fraction;
    return 2.0 / static_cast<double>(n_nodes - 1);
}

SubdomainMonitorRow monitor(const RadialDomainState& s) {
    SubdomainMonitorRow row;
    row.t = s.time;
    row.boundary_radius = s.boundary_radius;
    row.min_u = *std::min_element(s.u.begin(), s.u.end());
    const std::size_t n = s.u.size();
    const std::size_t outer_start = n - std::max<std::size_t>(1, n / 10);
    row.min_outer = *std::min_element(s.u.begin() + static_cast<std::ptrdiff_t>(outer_start),
                                      s.u.end());
    return row;
}

}  // namespace

RadialDomainState make_radial_domain_state(double initial_radius, int ambient_dim,
                                           std::size_t n_nodes,
                                           const std::function<double(double)>& profile,
                                           const SubdomainConfig& config) {
    ensure(initial_radius > 0.0, "make_radial_domain_state: radius must be positive");
    const double margin = effective_margin(config, n_nodes);
    ensure(margin > 0.0 && margin < 1.0, "make_radial_domain_state: margin out of (0,1)");
    RadialDomainState s;
    s.boundary_radius = initial_radius;
    s.grid = RadialGrid(initial_radius * (1.0 - margin), n_nodes, ambient_dim);
    s.u.resize(n_nodes);
    for (std::size_t i = 0; i < n_nodes; ++i) {
        s.u[i] = profile(s.grid.node(i));
        ensure(std::isfinite(s.u[i]),
               msg("make_radial_domain_state: non-finite profile at node ", i));
    }
    ensure(s.u.back() >= config.properness_cap,
           msg("make_radial_domain_state: profile reaches only ", s.u.back(),
               " at the outermost node; properness cap is ", config.properness_cap));
    return s;
}

SubdomainTrajectory evolve_radial_subdomain(const RadialDomainState& initial,
                                            const SubdomainConfig& config) {
    const int n_dim = initial.grid.ambient_dim;
    const double t_ext = extinction_time(initial.boundary_radius, n_dim);
    ensure(config.flow.t_end < t_ext,
           msg("evolve_radial_subdomain: t_end ", config.flow.t_end,
               " reaches the extinction time ", t_ext));
    const double margin = effective_margin(config, initial.u.size());
    const double R0 = initial.boundary_radius;

    SubdomainTrajectory traj;
    traj.states.push_back(initial);
    traj.monitor.push_back(monitor(initial));

    RadialDomainState s = initial;
    FlowConfig flow = config.flow;
    std::size_t step = 0;
    while (s.time < config.flow.t_end * (1.0 - 1e-14)) {
        const double h = s.grid.h;
        const double dt_cap = config.flow.cfl * h * h / (2.0 * static_cast<double>(n_dim));
        const double dt = std::min(dt_cap, config.flow.t_end - s.time);

        // Interior update on the current grid.
        flow.t_end = s.time + dt;
        ScalarField f(s.grid, s.u, s.time);
        f = step_radial(f, dt, flow);
        ++step;

        // Boundary follows the sphere law; rescale and re-interpolate.
        const double t_new = s.time + dt;
        const double R_new = sphere_radius(R0, n_dim, t_new);
        RadialGrid grid_new(R_new * (1.0 - margin), s.u.size(), n_dim);
        std::vector<double> u_new(s.u.size());
        for (std::size_t i = 0; i < u_new.size(); ++i)
            u_new[i] = cubic_interp_uniform(f.values, s.grid.h, grid_new.node(i));

        s.boundary_radius = R_new;
        s.grid = grid_new;
        s.u = std::move(u_new);
        s.time = t_new;
        traj.monitor.push_back(monitor(s));
        if ((config.flow.snapshot_stride > 0 && step % config.flow.snapshot_stride == 0) ||
            s.time >= config.flow.t_end * (1.0 - 1e-14))
            traj.states.push_back(s);
    }
    return traj;
}

}  // namespace mcflab
