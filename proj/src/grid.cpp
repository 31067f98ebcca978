#include "mcflab/grid.hpp"

#include <cmath>

namespace mcflab {

Grid1D::Grid1D(double xmin, double xmax, std::size_t n) : x_min(xmin), x_max(xmax), n_nodes(n) {
    ensure(n >= 5, msg("Grid1D: need at least 5 nodes, got ", n));
    ensure(n % 2 == 1, msg("Grid1D: node count must be odd, got ", n));
    ensure(xmax > xmin, msg("Grid1D: bounds not ordered: [", xmin, ", ", xmax, "]"));
    h = (xmax - xmin) / static_cast<double>(n - 1);
    ensure(h > 0.0, "Grid1D: non-positive spacing");
}

RadialGrid::RadialGrid(double rmax, std::size_t n, int dim)
    : r_max(rmax), n_nodes(n), ambient_dim(dim) {
    ensure(rmax > 0.0, msg("RadialGrid: r_max must be positive, got ", rmax));
    ensure(n >= 5, msg("RadialGrid: need at least 5 nodes, got ", n));
    ensure(dim >= 2, msg("RadialGrid: ambient dimension must be >= 2, got ", dim));
    h = rmax / static_cast<double>(n - 1);
}

TensorGrid2D::TensorGrid2D(double xmin, double xmax, std::size_t nx_, double ymin, double ymax,
                           std::size_t ny_)
    : x_min(xmin), x_max(xmax), y_min(ymin), y_max(ymax), nx(nx_), ny(ny_) {
    ensure(nx_ >= 5 && ny_ >= 5, "TensorGrid2D: need at least 5 nodes per axis");
    ensure(xmax > xmin && ymax > ymin, "TensorGrid2D: bounds not ordered");
    hx = (xmax - xmin) / static_cast<double>(nx_ - 1);
    hy = (ymax - ymin) / static_cast<double>(ny_ - 1);
}

std::size_t grid_node_count(const GridVariant& g) {
    return std::visit(
        [](const auto& grid) -> std::size_t {
            using T = std::decay_t<decltype(grid)>;
            if constexpr (std::is_same_v<T, TensorGrid2D>)
                return grid.n_nodes();
            else
                return grid.n_nodes;
        },
        g);
}

double grid_spacing(const GridVariant& g) {
    return std::visit(
        [](const auto& grid) -> double {
            using T = std::decay_t<decltype(grid)>;
            if constexpr (std::is_same_v<T, TensorGrid2D>)
                return std::min(grid.hx, grid.hy);
            else
                return grid.h;
        },
        g);
}

int grid_stencil_dim(const GridVariant& g) {
    return std::holds_alternative<TensorGrid2D>(g) ? 2 : 1;
}

int grid_cfl_dim(const GridVariant& g) {
    if (const auto* r = std::get_if<RadialGrid>(&g)) return r->ambient_dim;
    return std::holds_alternative<TensorGrid2D>(g) ? 2 : 1;
}

ScalarField::ScalarField(GridVariant g, std::vector<double> v, double t)
    : grid(std::move(g)), values(std::move(v)), time(t) {
    ensure(values.size() == grid_node_count(grid),
           msg("ScalarField: ", values.size(), " values for ", grid_node_count(grid), " nodes"));
    ensure(time >= 0.0, "ScalarField: negative time stamp");
    for (std::size_t i = 0; i < values.size(); ++i)
        ensure(std::isfinite(values[i]), msg("ScalarField: non-finite value at node ", i));
}

GridVariant make_grid(const GridRequest& req) {
    if (req.kind == "line") return Grid1D(req.x_min, req.x_max, req.n_nodes);
    if (req.kind == "radial") return RadialGrid(req.r_max, req.n_nodes, req.ambient_dim);
    if (req.kind == "tensor2d")
        return TensorGrid2D(req.x_min, req.x_max, req.n_nodes, req.y_min, req.y_max, req.ny);
    throw InvalidArgument(msg("make_grid: unknown grid kind '", req.kind, "'"));
}

namespace {

double checked_sample(double value, std::size_t node, double coord) {
    ensure_runtime(std::isfinite(value),
                   msg("sample: non-finite value at node ", node, " (coordinate ", coord, ")"));
    return value;
}

}  // namespace

ScalarField sample(const std::function<double(double)>& f, const Grid1D& g) {
    std::vector<double> v(g.n_nodes);
    for (std::size_t i = 0; i < g.n_nodes; ++i) v[i] = checked_sample(f(g.node(i)), i, g.node(i));
    return ScalarField(g, std::move(v), 0.0);
}

ScalarField sample(const std::function<double(double)>& f, const RadialGrid& g) {
    std::vector<double> v(g.n_nodes);
    for (std::size_t i = 0; i < g.n_nodes; ++i) v[i] = checked_sample(f(g.node(i)), i, g.node(i));
    return ScalarField(g, std::move(v), 0.0);
}

ScalarField sample(const std::function<double(double, double)>& f, const TensorGrid2D& g) {
    std::vector<double> v(g.n_nodes());
    for (std::size_t j = 0; j < g.ny; ++j)
        for (std::size_t i = 0; i < g.nx; ++i) {
            const std::size_t k = g.flat(i, j);
            v[k] = checked_sample(f(g.node_x(i), g.node_y(j)), k, g.node_x(i));
        }
    return ScalarField(g, std::move(v), 0.0);
}

}  // namespace mcflab
