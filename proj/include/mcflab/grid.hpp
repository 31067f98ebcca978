// Uniform grids and discrete height fields.
#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "mcflab/common.hpp"

namespace mcflab {

// Uniform 1D grid over [x_min, x_max]. Node count is odd so that x = 0 is a
// node on symmetric windows.
struct Grid1D {
    double x_min = 0.0;
    double x_max = 0.0;
    std::size_t n_nodes = 0;
    double h = 0.0;

    Grid1D() = default;
    Grid1D(double xmin, double xmax, std::size_t n);

    double node(std::size_t i) const { return x_min + static_cast<double>(i) * h; }
};

// Uniform radial grid on [0, r_max]; node 0 sits exactly at r = 0.
// ambient_dim is the dimension n of the base space R^n.
struct RadialGrid {
    double r_max = 0.0;
    std::size_t n_nodes = 0;
    int ambient_dim = 2;
    double h = 0.0;

    RadialGrid() = default;
    RadialGrid(double rmax, std::size_t n, int dim);

    double node(std::size_t i) const { return static_cast<double>(i) * h; }
};

// Tensor-product 2D grid; uniform spacing per axis, x index fastest.
struct TensorGrid2D {
    double x_min = 0.0, x_max = 0.0;
    double y_min = 0.0, y_max = 0.0;
    std::size_t nx = 0, ny = 0;
    double hx = 0.0, hy = 0.0;

    TensorGrid2D() = default;
    TensorGrid2D(double xmin, double xmax, std::size_t nx_, double ymin, double ymax,
                 std::size_t ny_);

    std::size_t n_nodes() const { return nx * ny; }
    std::size_t flat(std::size_t i, std::size_t j) const { return i + nx * j; }
    double node_x(std::size_t i) const { return x_min + static_cast<double>(i) * hx; }
    double node_y(std::size_t j) const { return y_min + static_cast<double>(j) * hy; }
};

using GridVariant = std::variant<Grid1D, RadialGrid, TensorGrid2D>;

std::size_t grid_node_count(const GridVariant& g);
// Smallest spacing (h for 1D/radial, min(hx, hy) in 2D).
double grid_spacing(const GridVariant& g);
// Spatial dimension of the PDE stencil: 1 for Grid1D/RadialGrid, 2 for tensor.
int grid_stencil_dim(const GridVariant& g);
// Dimension entering the parabolic CFL bound (ambient_dim for radial grids).
int grid_cfl_dim(const GridVariant& g);

// Height samples u on a grid at one time stamp.
struct ScalarField {
    GridVariant grid;
    std::vector<double> values;
    double time = 0.0;

    ScalarField() = default;
    ScalarField(GridVariant g, std::vector<double> v, double t);
};

struct GridRequest {
    std::string kind;  // "line", "radial", "tensor2d"
    double x_min = 0.0, x_max = 0.0;
    std::size_t n_nodes = 0;
    double r_max = 0.0;
    int ambient_dim = 2;
    double y_min = 0.0, y_max = 0.0;
    std::size_t ny = 0;
};

GridVariant make_grid(const GridRequest& req);

// Samples a closed-form datum; fails loudly on non-finite values.
ScalarField sample(const std::function<double(double)>& f, const Grid1D& g);
ScalarField sample(const std::function<double(double)>& f, const RadialGrid& g);
ScalarField sample(const std::function<double(double, double)>& f, const TensorGrid2D& g);

}  // namespace mcflab
