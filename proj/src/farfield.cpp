#include "mcflab/farfield.hpp"

#include <cmath>

namespace mcflab {

FarFieldPolicy FarFieldPolicy::frozen_from(const ScalarField& u0) {
    FarFieldPolicy p;
    p.kind = FarFieldKind::FrozenInitialSlope;
    const auto& v = u0.values;
    ensure(v.size() >= 2, "frozen_from: need at least two nodes");
    const double h = grid_spacing(u0.grid);
    p.frozen_left = (v[1] - v[0]) / h;
    p.frozen_right = (v[v.size() - 1] - v[v.size() - 2]) / h;
    ensure(std::isfinite(p.frozen_left) && std::isfinite(p.frozen_right),
           "frozen_from: non-finite boundary slope");
    return p;
}

FarFieldPolicy FarFieldPolicy::clamped(std::function<double(double)> profile) {
    FarFieldPolicy p;
    p.kind = FarFieldKind::ClampedInitialContinuation;
    p.initial_profile = std::move(profile);
    return p;
}

FarFieldPolicy FarFieldPolicy::clamped2d(std::function<double(double, double)> profile) {
    FarFieldPolicy p;
    p.kind = FarFieldKind::ClampedInitialContinuation;
    p.initial_profile_2d = std::move(profile);
    return p;
}

namespace {

// One boundary of a 1D value sequence. `edge` is the boundary node index,
// `inward` the index step toward the interior, `x_edge`/`dx_out` the boundary
// coordinate and the outward coordinate step.
std::vector<double> extend_side(const std::vector<double>& u, std::size_t edge,
                                std::ptrdiff_t inward, double x_edge, double dx_out, double h,
                                double frozen_slope, const FarFieldPolicy& policy,
                                std::size_t width) {
    std::vector<double> ghosts(width);
    const auto e = static_cast<std::ptrdiff_t>(edge);
    const double u_e = u[edge];
    const double u_1 = u[static_cast<std::size_t>(e + inward)];
    switch (policy.kind) {
        case FarFieldKind::LinearExtrapolate: {
            const double step = u_e - u_1;
            for (std::size_t k = 0; k < width; ++k)
                ghosts[k] = u_e + static_cast<double>(k + 1) * step;
            break;
        }
        case FarFieldKind::FrozenInitialSlope: {
            // frozen_slope is oriented inward-to-edge; continuing outward keeps it.
            const double sign = dx_out > 0 ? 1.0 : -1.0;
            for (std::size_t k = 0; k < width; ++k)
                ghosts[k] = u_e + sign * static_cast<double>(k + 1) * h * frozen_slope;
            break;
        }
        case FarFieldKind::QuadraticExtrapolate: {
            const double u_2 = u[static_cast<std::size_t>(e + 2 * inward)];
            const double d1 = u_e - u_1;
            const double d2 = u_e - 2.0 * u_1 + u_2;
            for (std::size_t k = 0; k < width; ++k) {
                const double s = static_cast<double>(k + 1);
                ghosts[k] = u_e + s * d1 + 0.5 * s * (s + 1.0) * d2;
            }
            break;
        }
        case FarFieldKind::ClampedInitialContinuation: {
            ensure(static_cast<bool>(policy.initial_profile),
                   "ClampedInitialContinuation: no initial profile bound to the policy");
            const double shift = u_e - policy.initial_profile(x_edge);
            for (std::size_t k = 0; k < width; ++k)
                ghosts[k] = policy.initial_profile(x_edge + static_cast<double>(k + 1) * dx_out) +
                            shift;
            break;
        }
    }
    for (double g : ghosts) ensure_runtime(std::isfinite(g), "extend_ghost: non-finite ghost");
    return ghosts;
}

}  // namespace

GhostValues extend_ghost(const ScalarField& field, const FarFieldPolicy& policy,
                         std::size_t width) {
    ensure(width >= 1, "extend_ghost: width must be >= 1");
    GhostValues out;
    if (const auto* g = std::get_if<Grid1D>(&field.grid)) {
        out.left = extend_side(field.values, 0, +1, g->x_min, -g->h, g->h, policy.frozen_left,
                               policy, width);
        out.right = extend_side(field.values, g->n_nodes - 1, -1, g->x_max, +g->h, g->h,
                                policy.frozen_right, policy, width);
        return out;
    }
    if (const auto* g = std::get_if<RadialGrid>(&field.grid)) {
        ensure(width < g->n_nodes, "extend_ghost: width exceeds radial grid");
        out.left.resize(width);
        for (std::size_t k = 0; k < width; ++k) out.left[k] = field.values[k + 1];
        out.right = extend_side(field.values, g->n_nodes - 1, -1, g->r_max, +g->h, g->h,
                                policy.frozen_right, policy, width);
        return out;
    }
    throw InvalidArgument("extend_ghost: use pad_field_2d for tensor grids");
}

PaddedField2D pad_field_2d(const ScalarField& field, const FarFieldPolicy& policy,
                           std::size_t width) {
    ensure(width >= 1, "pad_field_2d: width must be >= 1");
    const auto* g = std::get_if<TensorGrid2D>(&field.grid);
    ensure(g != nullptr, "pad_field_2d: field is not on a tensor grid");
    ensure(policy.kind == FarFieldKind::LinearExtrapolate ||
               policy.kind == FarFieldKind::QuadraticExtrapolate ||
               policy.kind == FarFieldKind::ClampedInitialContinuation,
           "pad_field_2d: policy not supported on tensor grids");
    FarFieldPolicy row_policy = policy;

    PaddedField2D out;
    out.width = width;
    out.nx = g->nx + 2 * width;
    out.ny = g->ny + 2 * width;
    out.values.assign(out.nx * out.ny, 0.0);

    // Rows first: extend each real row in x.
    for (std::size_t j = 0; j < g->ny; ++j) {
        std::vector<double> row(g->nx);
        for (std::size_t i = 0; i < g->nx; ++i) row[i] = field.values[g->flat(i, j)];
        if (policy.kind == FarFieldKind::ClampedInitialContinuation) {
            ensure(static_cast<bool>(policy.initial_profile_2d),
                   "pad_field_2d: no 2D initial profile bound to the policy");
            const double y = g->node_y(j);
            row_policy.initial_profile = [&, y](double x) { return policy.initial_profile_2d(x, y); };
        }
        auto left = extend_side(row, 0, +1, g->x_min, -g->hx, g->hx, 0.0, row_policy, width);
        auto right =
            extend_side(row, g->nx - 1, -1, g->x_max, +g->hx, g->hx, 0.0, row_policy, width);
        double* dst = &out.values[out.nx * (j + width)];
        for (std::size_t k = 0; k < width; ++k) dst[width - 1 - k] = left[k];
        for (std::size_t i = 0; i < g->nx; ++i) dst[width + i] = row[i];
        for (std::size_t k = 0; k < width; ++k) dst[width + g->nx + k] = right[k];
    }

    // Then every column of the widened array in y; this fills the corners.
    for (std::size_t i = 0; i < out.nx; ++i) {
        std::vector<double> col(g->ny);
        for (std::size_t j = 0; j < g->ny; ++j) col[j] = out.values[i + out.nx * (j + width)];
        if (policy.kind == FarFieldKind::ClampedInitialContinuation) {
            const double x =
                g->x_min + (static_cast<double>(i) - static_cast<double>(width)) * g->hx;
            row_policy.initial_profile = [&, x](double y) { return policy.initial_profile_2d(x, y); };
        }
        auto low = extend_side(col, 0, +1, g->y_min, -g->hy, g->hy, 0.0, row_policy, width);
        auto high =
            extend_side(col, g->ny - 1, -1, g->y_max, +g->hy, g->hy, 0.0, row_policy, width);
        for (std::size_t k = 0; k < width; ++k) {
            out.values[i + out.nx * (width - 1 - k)] = low[k];
            out.values[i + out.nx * (g->ny + width + k)] = high[k];
        }
    }
    return out;
}

}  // namespace mcflab
