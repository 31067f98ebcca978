#include "mcflab/initdata.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <random>
#include <vector>

namespace mcflab {

double InitialDatum::eval2d(double x, double y) const {
    ensure(static_cast<bool>(profile2d), msg("datum '", name, "' does not extend to R^2"));
    return profile2d(x, y);
}

InitialDatum InitialDatum::shifted(double c) const {
    InitialDatum out = *this;
    if (c == 0.0) return out;
    out.name = msg(name, "+", c);
    auto f = profile;
    out.profile = [f, c](double x) { return f(x) + c; };
    if (profile2d) {
        auto f2 = profile2d;
        out.profile2d = [f2, c](double x, double y) { return f2(x, y) + c; };
    }
    // Vertical shifts move sublevel sets: c(M) for the shifted datum is the
    // original c(M - shift).
    if (slope_bound_c) {
        auto cm = slope_bound_c;
        out.slope_bound_c = [cm, c](double M) { return cm(M - c); };
    }
    return out;
}

namespace {

InitialDatum radial_datum(std::string name, std::function<double(double)> f) {
    InitialDatum d;
    d.name = std::move(name);
    d.profile = f;
    d.profile2d = [f](double x, double y) { return f(std::hypot(x, y)); };
    return d;
}

bool parse_call(const std::string& name, const std::string& head, std::vector<double>& args) {
    if (name.rfind(head + "(", 0) != 0 || name.back() != ')') return false;
    std::string inner = name.substr(head.size() + 1, name.size() - head.size() - 2);
    args.clear();
    std::size_t pos = 0;
    while (pos < inner.size()) {
        std::size_t next = inner.find(',', pos);
        if (next == std::string::npos) next = inner.size();
        try {
            args.push_back(std::stod(inner.substr(pos, next - pos)));
        } catch (const std::exception&) {
            throw InvalidArgument(msg("builtin: cannot parse argument in '", name, "'"));
        }
        pos = next + 1;
    }
    return true;
}

}  // namespace

InitialDatum builtin(const std::string& name) {
    std::vector<double> args;
    if (parse_call(name, "line", args)) {
        ensure(args.size() == 2, "builtin: line takes two arguments line(a,b)");
        const double a = args[0], b = args[1];
        InitialDatum d;
        d.name = name;
        d.profile = [a, b](double x) { return a * x + b; };
        d.profile2d = [a, b](double x, double) { return a * x + b; };
        d.convex = true;
        d.proper = false;
        d.lipschitz_constant = std::abs(a);
        d.slope_bound_c = [a](double) { return std::sqrt(1.0 + a * a); };
        return d;
    }
    if (parse_call(name, "cone", args)) {
        ensure(args.size() == 1 && args[0] > 0.0, "builtin: cone takes one positive slope");
        const double a = args[0];
        InitialDatum d = radial_datum(name, [a](double x) { return a * std::abs(x); });
        d.convex = true;
        d.proper = true;
        d.lipschitz_constant = a;
        d.slope_bound_c = [a](double M) {
            return M > 0.0 ? std::sqrt(1.0 + a * a) : 1.0;
        };
        return d;
    }
    if (name == "abs") {
        InitialDatum d = builtin("cone(1)");
        d.name = "abs";
        return d;
    }
    if (name == "paraboloid") {
        InitialDatum d = radial_datum(name, [](double x) { return 0.5 * x * x; });
        d.convex = true;
        d.proper = true;
        d.slope_bound_c = [](double M) {
            return M > 0.0 ? std::sqrt(1.0 + 2.0 * M) : 1.0;
        };
        return d;
    }
    if (name == "cosh") {
        InitialDatum d = radial_datum(name, [](double x) { return std::cosh(x); });
        d.convex = true;
        d.proper = true;
        d.slope_bound_c = [](double M) { return M > 1.0 ? M : 1.0; };
        return d;
    }
    if (name == "grim_reaper") {
        InitialDatum d;
        d.name = name;
        d.profile = [](double x) { return -std::log(std::cos(x)); };
        d.convex = true;
        d.proper = true;  // proper over its own domain
        d.domain = std::make_pair(-std::asin(1.0), std::asin(1.0));
        return d;
    }
    if (name == "oscillatory") {
        // Bounded height, slope growing linearly in |x|: violates the
        // bounded-slope condition on every sublevel set.
        InitialDatum d;
        d.name = name;
        d.profile = [](double x) { return std::sin(x * x); };
        d.profile2d = [](double x, double y) { return std::sin(x * x + y * y); };
        d.convex = false;
        d.proper = false;
        d.condition_41_unbounded = true;
        return d;
    }
    throw InvalidArgument(msg("builtin: unknown datum '", name, "'"));
}

InitialDatum random_lipschitz(std::uint64_t seed, double slope_bound, const Grid1D& grid) {
    ensure(slope_bound > 0.0, "random_lipschitz: slope bound must be positive");
    std::mt19937_64 rng(seed);
    const std::size_t n = grid.n_nodes;
    auto nodes = std::make_shared<std::vector<double>>(n);
    auto values = std::make_shared<std::vector<double>>(n);
    (*values)[0] = 0.0;
    for (std::size_t i = 0; i < n; ++i) (*nodes)[i] = grid.node(i);
    for (std::size_t i = 1; i < n; ++i) {
        const double step = (2.0 * unit_double(rng()) - 1.0) * slope_bound * grid.h;
        (*values)[i] = (*values)[i - 1] + step;
    }

    InitialDatum d;
    d.name = msg("random_lipschitz(seed=", seed, ",L=", slope_bound, ")");
    d.lipschitz_constant = slope_bound;
    const double x_min = grid.x_min, x_max = grid.x_max, h = grid.h;
    d.profile = [nodes, values, x_min, x_max, h](double x) {
        const std::size_t n_pts = nodes->size();
        if (x <= x_min)  // continue the end slopes linearly
            return (*values)[0] + ((*values)[1] - (*values)[0]) / h * (x - x_min);
        if (x >= x_max)
            return (*values)[n_pts - 1] +
                   ((*values)[n_pts - 1] - (*values)[n_pts - 2]) / h * (x - x_max);
        const auto i = static_cast<std::size_t>((x - x_min) / h);
        const std::size_t j = std::min(i, n_pts - 2);
        const double w = (x - (*nodes)[j]) / h;
        return (1.0 - w) * (*values)[j] + w * (*values)[j + 1];
    };
    return d;
}

SlopeBoundConstant boundedcase_constant(const InitialDatum& datum, const GridVariant& grid,
                                        double M, double cap) {
    ensure(!std::holds_alternative<TensorGrid2D>(grid),
           "boundedcase_constant: 1D or radial grids only");
    const std::size_t n = grid_node_count(grid);
    const double h = grid_spacing(grid);
    std::vector<double> u(n);
    std::vector<double> x(n);
    if (const auto* g = std::get_if<Grid1D>(&grid))
        for (std::size_t i = 0; i < n; ++i) x[i] = g->node(i);
    else
        for (std::size_t i = 0; i < n; ++i) x[i] = std::get<RadialGrid>(grid).node(i);
    for (std::size_t i = 0; i < n; ++i) u[i] = datum.eval(x[i]);

    std::vector<bool> in_set(n);
    bool any = false;
    for (std::size_t i = 0; i < n; ++i) {
        in_set[i] = u[i] < M;
        any = any || in_set[i];
    }
    ensure(any, msg("boundedcase_constant: the set {u0 < ", M, "} contains no node"));

    double sup_v = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!in_set[i]) continue;
        const bool left_ok = i > 0 && in_set[i - 1];
        const bool right_ok = i + 1 < n && in_set[i + 1];
        double slope;
        if (left_ok && right_ok) {
            slope = (u[i + 1] - u[i - 1]) / (2.0 * h);
        } else if (left_ok) {
            slope = (u[i] - u[i - 1]) / h;
        } else if (right_ok) {
            slope = (u[i + 1] - u[i]) / h;
        } else {
            // Isolated node: fall back to the one-sided grid slopes.
            double s = 0.0;
            if (i > 0) s = std::max(s, std::abs(u[i] - u[i - 1]) / h);
            if (i + 1 < n) s = std::max(s, std::abs(u[i + 1] - u[i]) / h);
            slope = s;
        }
        sup_v = std::max(sup_v, std::sqrt(1.0 + slope * slope));
    }
    SlopeBoundConstant out;
    out.value = sup_v;
    out.unbounded = sup_v > cap;
    return out;
}

ClosedCurve double_at_height(const InitialDatum& datum, const Grid1D& grid, double height) {
    ensure(datum.convex, msg("double_at_height: datum '", datum.name, "' is not convex"));
    ensure(datum.proper, msg("double_at_height: datum '", datum.name, "' is not proper"));

    const std::size_t n = grid.n_nodes;
    std::vector<double> u(n);
    double min_u = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        u[i] = datum.eval(grid.node(i));
        min_u = std::min(min_u, u[i]);
    }
    ensure(min_u < height, "double_at_height: empty doubled region");

    // The sublevel set of a convex proper datum is one interval; locate its
    // ends by linear interpolation between bracketing nodes.
    std::size_t first = 0;
    while (u[first] >= height) ++first;
    std::size_t last = n - 1;
    while (u[last] >= height) --last;
    ensure(first > 0 && last < n - 1,
           "double_at_height: sublevel set reaches the grid boundary; widen the grid");

    const auto crossing = [&](std::size_t in, std::size_t out) {
        const double w = (height - u[in]) / (u[out] - u[in]);
        return grid.node(in) + w * (grid.node(out) - grid.node(in));
    };
    const double x_left = crossing(first, first - 1);
    const double x_right = crossing(last, last + 1);

    std::vector<Vec2> pts;
    pts.reserve(2 * (last - first + 2));
    pts.push_back({x_left, height});
    for (std::size_t i = first; i <= last; ++i)
        if (u[i] < height) pts.push_back({grid.node(i), u[i]});
    pts.push_back({x_right, height});
    const std::size_t lower_end = pts.size();
    // Reflected upper part, right to left; crossing points are shared.
    for (std::size_t k = lower_end - 1; k-- > 1;)
        pts.push_back({pts[k].x, 2.0 * height - pts[k].y});

    return make_closed_curve(std::move(pts), 0.0);
}

}  // namespace mcflab
