#include "mcflab/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace mcflab {

double generalized_eigen_min(const Sym2& m, const Sym2& g) {
    ensure(g.xx > 0.0 && g.det() > 0.0, "generalized_eigen_min: g not positive definite");
    // det(m - lambda g) = A lambda^2 + B lambda + C.
    const double A = g.det();
    const double B = -(m.xx * g.yy + m.yy * g.xx - 2.0 * m.xy * g.xy);
    const double C = m.det();
    const double disc = std::max(0.0, B * B - 4.0 * A * C);
    const double root = std::sqrt(disc);
    // Stable quadratic roots.
    const double q = -0.5 * (B + (B >= 0.0 ? root : -root));
    const double l1 = q / A;
    const double l2 = (q != 0.0) ? C / q : (-B - root) / (2.0 * A);
    return std::min(l1, l2);
}

Shape1D shape_operator(double ux, double uxx) {
    Shape1D s;
    const double v = gradient_function(ux);
    s.b = uxx / v;
    s.h = uxx / (v * v * v);
    s.H = s.h;
    s.A2 = s.h * s.h;
    return s;
}

double condition_eigenvalue(double v, double g, double b) {
    ensure(g > 0.0, "condition_eigenvalue: metric not positive definite");
    return v * b / g;
}

double gradient_function(Vec2 du) { return std::sqrt(1.0 + du.x * du.x + du.y * du.y); }

Sym2 induced_metric(Vec2 du) { return {1.0 + du.x * du.x, 1.0 + du.y * du.y, du.x * du.y}; }

Sym2 diffusion_matrix(Vec2 du) {
    const double w = 1.0 / (1.0 + du.x * du.x + du.y * du.y);
    return {1.0 - du.x * du.x * w, 1.0 - du.y * du.y * w, -du.x * du.y * w};
}

Shape2D shape_operator(Vec2 du, Sym2 d2u) {
    Shape2D s;
    const double v = gradient_function(du);
    s.b = {d2u.xx / v, d2u.yy / v, d2u.xy / v};
    const Sym2 a = diffusion_matrix(du);
    s.h = mul(a, s.b);
    s.H = s.h.trace();
    s.A2 = s.h.a11 * s.h.a11 + s.h.a22 * s.h.a22 + 2.0 * s.h.a12 * s.h.a21;
    return s;
}

double condition_eigenvalue(double v, const Sym2& g, const Sym2& b) {
    const Sym2 vb{v * b.xx, v * b.yy, v * b.xy};
    return generalized_eigen_min(vb, g);
}

RadialShape radial_shape(double ur, double urr, double ur_over_r, int ambient_dim) {
    RadialShape s;
    s.v = gradient_function(ur);
    const double v3 = s.v * s.v * s.v;
    s.kappa_radial = urr / v3;
    s.kappa_angular = ur_over_r / s.v;
    s.H = s.kappa_radial + static_cast<double>(ambient_dim - 1) * s.kappa_angular;
    s.A2 = s.kappa_radial * s.kappa_radial +
           static_cast<double>(ambient_dim - 1) * s.kappa_angular * s.kappa_angular;
    s.lam_min_vh = std::min(urr / (s.v * s.v), ur_over_r);
    return s;
}

GeometricData compute_geometry(const ScalarField& field, const FarFieldPolicy& policy) {
    GeometricData g;
    g.derivs = diff_ops(field, policy);
    const std::size_t n = grid_node_count(field.grid);
    g.v.resize(n);
    g.H.resize(n);
    g.A2.resize(n);
    g.lam_min_vh.resize(n);

    if (const auto* rg = std::get_if<RadialGrid>(&field.grid)) {
        for (std::size_t i = 0; i < n; ++i) {
            const double ur = g.derivs.du[i];
            const double urr = g.derivs.d2u[i];
            const double uror = i == 0 ? urr : ur / rg->node(i);
            const RadialShape s = radial_shape(ur, urr, uror, rg->ambient_dim);
            g.v[i] = s.v;
            g.H[i] = s.H;
            g.A2[i] = s.A2;
            g.lam_min_vh[i] = s.lam_min_vh;
        }
        return g;
    }
    if (g.derivs.dim == 1) {
        for (std::size_t i = 0; i < n; ++i) {
            const double ux = g.derivs.du[i];
            const double uxx = g.derivs.d2u[i];
            const Shape1D s = shape_operator(ux, uxx);
            g.v[i] = gradient_function(ux);
            g.H[i] = s.H;
            g.A2[i] = s.A2;
            g.lam_min_vh[i] = uxx / (g.v[i] * g.v[i]);
        }
        return g;
    }
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 du{g.derivs.du[2 * i], g.derivs.du[2 * i + 1]};
        const Sym2 d2u{g.derivs.d2u[3 * i], g.derivs.d2u[3 * i + 1], g.derivs.d2u[3 * i + 2]};
        const Shape2D s = shape_operator(du, d2u);
        g.v[i] = gradient_function(du);
        g.H[i] = s.H;
        g.A2[i] = s.A2;
        g.lam_min_vh[i] = condition_eigenvalue(g.v[i], induced_metric(du), s.b);
    }
    return g;
}

namespace {

// Gradient of a per-node scalar series along a line grid; one-sided at the
// ends, even reflection at a radial origin.
std::vector<double> line_gradient(const std::vector<double>& f, double h, bool radial_origin) {
    const std::size_t n = f.size();
    std::vector<double> df(n);
    for (std::size_t i = 1; i + 1 < n; ++i) df[i] = (f[i + 1] - f[i - 1]) / (2.0 * h);
    df[0] = radial_origin ? 0.0 : (f[1] - f[0]) / h;
    df[n - 1] = (f[n - 1] - f[n - 2]) / h;
    return df;
}

}  // namespace

HarnackEvaluator::HarnackEvaluator(const ScalarField& prev, const ScalarField& curr,
                                   const ScalarField& next, const FarFieldPolicy& policy)
    : time_(curr.time) {
    ensure(curr.time > 0.0, "harnack_quantity: requires t > 0");
    ensure(prev.time < curr.time && curr.time < next.time,
           "harnack_quantity: snapshots must be temporally ordered");
    ensure(grid_node_count(prev.grid) == grid_node_count(curr.grid) &&
               grid_node_count(next.grid) == grid_node_count(curr.grid),
           "harnack_quantity: snapshots on different grids");

    radial_ = std::holds_alternative<RadialGrid>(curr.grid);
    if (const auto* rg = std::get_if<RadialGrid>(&curr.grid)) ambient_dim_ = rg->ambient_dim;
    h_ = grid_spacing(curr.grid);

    geom_ = compute_geometry(curr, policy);
    const GeometricData gp = compute_geometry(prev, policy);
    const GeometricData gn = compute_geometry(next, policy);

    const std::size_t n = geom_.v.size();
    Ht_fixed_.resize(n);
    const double dt2 = next.time - prev.time;
    for (std::size_t i = 0; i < n; ++i) Ht_fixed_[i] = (gn.H[i] - gp.H[i]) / dt2;

    if (geom_.derivs.dim == 1) {
        dH_ = line_gradient(geom_.H, h_, radial_);
    } else {
        const auto* tg = std::get_if<TensorGrid2D>(&curr.grid);
        dH_.resize(2 * n);
        for (std::size_t j = 0; j < tg->ny; ++j)
            for (std::size_t i = 0; i < tg->nx; ++i) {
                const std::size_t k = tg->flat(i, j);
                const std::size_t xm = tg->flat(i == 0 ? 0 : i - 1, j);
                const std::size_t xp = tg->flat(i + 1 >= tg->nx ? tg->nx - 1 : i + 1, j);
                const std::size_t ym = tg->flat(i, j == 0 ? 0 : j - 1);
                const std::size_t yp = tg->flat(i, j + 1 >= tg->ny ? tg->ny - 1 : j + 1);
                const double wx = (xp - xm) == 0 ? 1.0 : static_cast<double>(xp - xm);
                const double wy = (yp - ym) == 0 ? 1.0 : static_cast<double>(yp - ym);
                dH_[2 * k] = (geom_.H[xp] - geom_.H[xm]) / (wx * tg->hx);
                dH_[2 * k + 1] = (geom_.H[yp] - geom_.H[ym]) / (wy * tg->hy);
            }
    }
}

double HarnackEvaluator::flow_time_derivative(std::size_t node) const {
    // Tangential drift T^i = v H g^{ij} D_j u; for graphs g^{ij} = a^{ij}.
    if (geom_.derivs.dim == 1) {
        const double ux = geom_.derivs.du[node];
        const double v = geom_.v[node];
        const double drift = geom_.H[node] * ux / v;  // v H * (ux / v^2)
        return Ht_fixed_[node] - drift * dH_[node];
    }
    const Vec2 du{geom_.derivs.du[2 * node], geom_.derivs.du[2 * node + 1]};
    const Sym2 a = diffusion_matrix(du);
    const double v = geom_.v[node];
    const double H = geom_.H[node];
    const Vec2 T{v * H * (a.xx * du.x + a.xy * du.y), v * H * (a.xy * du.x + a.yy * du.y)};
    return Ht_fixed_[node] - T.x * dH_[2 * node] - T.y * dH_[2 * node + 1];
}

double HarnackEvaluator::at(std::size_t node, const TangentVector& V) const {
    const double base = flow_time_derivative(node) + geom_.H[node] / (2.0 * time_);
    if (geom_.derivs.dim == 1) {
        // V.c1 is the x (or radial) component; b_11 = u_xx / v covers h(V, V).
        const double b = geom_.derivs.d2u[node] / geom_.v[node];
        return base + 2.0 * V.c1 * dH_[node] + b * V.c1 * V.c1;
    }
    const Sym2 b{geom_.derivs.d2u[3 * node] / geom_.v[node],
                 geom_.derivs.d2u[3 * node + 1] / geom_.v[node],
                 geom_.derivs.d2u[3 * node + 2] / geom_.v[node]};
    const double quad = b.xx * V.c1 * V.c1 + 2.0 * b.xy * V.c1 * V.c2 + b.yy * V.c2 * V.c2;
    return base + 2.0 * (V.c1 * dH_[2 * node] + V.c2 * dH_[2 * node + 1]) + quad;
}

bool HarnackEvaluator::strictly_convex(std::size_t node) const {
    constexpr double kFloor = 1e-12;
    if (geom_.derivs.dim == 1) {
        const double b_rad = geom_.derivs.d2u[node] / geom_.v[node];
        if (!radial_) return b_rad > kFloor;
        const double r = static_cast<double>(node) * h_;
        const double b_ang = node == 0 ? b_rad : (geom_.derivs.du[node] / r) / geom_.v[node];
        return b_rad > kFloor && b_ang > kFloor;
    }
    const Sym2 b{geom_.derivs.d2u[3 * node] / geom_.v[node],
                 geom_.derivs.d2u[3 * node + 1] / geom_.v[node],
                 geom_.derivs.d2u[3 * node + 2] / geom_.v[node]};
    return b.xx > kFloor && b.det() > kFloor * kFloor;
}

double HarnackEvaluator::minimized(std::size_t node) const {
    ensure_runtime(strictly_convex(node),
                   msg("harnack_quantity: not strictly convex at node ", node));
    const double base = flow_time_derivative(node) + geom_.H[node] / (2.0 * time_);
    if (geom_.derivs.dim == 1) {
        const double b = geom_.derivs.d2u[node] / geom_.v[node];
        const double g = dH_[node];
        return base - g * g / b;
    }
    const Sym2 b{geom_.derivs.d2u[3 * node] / geom_.v[node],
                 geom_.derivs.d2u[3 * node + 1] / geom_.v[node],
                 geom_.derivs.d2u[3 * node + 2] / geom_.v[node]};
    const double gx = dH_[2 * node], gy = dH_[2 * node + 1];
    const double det = b.det();
    // dH^T b^{-1} dH.
    const double quad = (b.yy * gx * gx - 2.0 * b.xy * gx * gy + b.xx * gy * gy) / det;
    return base - quad;
}

double harnack_quantity(const ScalarField& prev, const ScalarField& curr,
                        const ScalarField& next, const FarFieldPolicy& policy, std::size_t node,
                        const std::optional<TangentVector>& V) {
    const HarnackEvaluator evaluator(prev, curr, next, policy);
    return V ? evaluator.at(node, *V) : evaluator.minimized(node);
}

}  // namespace mcflab
