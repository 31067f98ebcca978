// Rotationally symmetric flow over a shrinking ball: the boundary radius
// follows the exact sphere law R(t) = sqrt(R0^2 - 2(n-1)t) while the interior
// profile evolves by the radial equation on a rescaled grid.
#pragma once

#include "mcflab/flow.hpp"

namespace mcflab {

struct RadialDomainState {
    double boundary_radius = 0.0;
    RadialGrid grid;  // covers [0, (1 - margin) * R(t)]
    std::vector<double> u;
    double time = 0.0;
};

struct SubdomainConfig {
    FlowConfig flow;
    // Gap between the last grid node and R(t), as a fraction of R(t); keeps
    // the near-boundary blow-up off-grid. Defaults to two spacings.
    double margin_fraction = -1.0;
    // Properness gate: require u0 at the outermost node to reach this height.
    double properness_cap = 3.0;
};

struct SubdomainMonitorRow {
    double t = 0.0;
    double boundary_radius = 0.0;
    double min_outer = 0.0;  // min of u over the outer 10% of nodes
    double min_u = 0.0;
};

struct SubdomainTrajectory {
    std::vector<RadialDomainState> states;
    std::vector<SubdomainMonitorRow> monitor;
};

double extinction_time(double initial_radius, int ambient_dim);
double sphere_radius(double initial_radius, int ambient_dim, double t);

// Builds the initial state from a profile on the ball of radius R0.
RadialDomainState make_radial_domain_state(double initial_radius, int ambient_dim,
                                           std::size_t n_nodes,
                                           const std::function<double(double)>& profile,
                                           const SubdomainConfig& config);

SubdomainTrajectory evolve_radial_subdomain(const RadialDomainState& initial,
                                            const SubdomainConfig& config);

// Cubic interpolation on a uniform grid (4-point Lagrange, stencils clamped
// at the boundaries).
double cubic_interp_uniform(const std::vector<double>& values, double h, double x);

}  // namespace mcflab
