#include "mcflab/stencil.hpp"

namespace mcflab {

namespace {

void diff_line(const std::vector<double>& u, double h, double left_ghost, double right_ghost,
               std::vector<double>& du, std::vector<double>& d2u) {
    const std::size_t n = u.size();
    const double inv2h = 1.0 / (2.0 * h);
    const double invh2 = 1.0 / (h * h);
    for (std::size_t i = 0; i < n; ++i) {
        const double um = i == 0 ? left_ghost : u[i - 1];
        const double up = i == n - 1 ? right_ghost : u[i + 1];
        du[i] = (up - um) * inv2h;
        d2u[i] = (up - 2.0 * u[i] + um) * invh2;
    }
}

}  // namespace

void diff_ops_into(const ScalarField& field, const FarFieldPolicy& policy, Derivatives& out) {
    const std::size_t n = grid_node_count(field.grid);
    if (const auto* g2 = std::get_if<TensorGrid2D>(&field.grid)) {
        out.dim = 2;
        out.du.resize(2 * n);
        out.d2u.resize(3 * n);
        const PaddedField2D p = pad_field_2d(field, policy, 1);
        const double i2hx = 1.0 / (2.0 * g2->hx), i2hy = 1.0 / (2.0 * g2->hy);
        const double ihx2 = 1.0 / (g2->hx * g2->hx), ihy2 = 1.0 / (g2->hy * g2->hy);
        const double ihxy = i2hx * i2hy;
        for (std::size_t j = 0; j < g2->ny; ++j)
            for (std::size_t i = 0; i < g2->nx; ++i) {
                const auto ii = static_cast<std::ptrdiff_t>(i);
                const auto jj = static_cast<std::ptrdiff_t>(j);
                const std::size_t k = g2->flat(i, j);
                const double c = p.at(ii, jj);
                const double xm = p.at(ii - 1, jj), xp = p.at(ii + 1, jj);
                const double ym = p.at(ii, jj - 1), yp = p.at(ii, jj + 1);
                out.du[2 * k] = (xp - xm) * i2hx;
                out.du[2 * k + 1] = (yp - ym) * i2hy;
                out.d2u[3 * k] = (xp - 2.0 * c + xm) * ihx2;
                out.d2u[3 * k + 1] = (yp - 2.0 * c + ym) * ihy2;
                out.d2u[3 * k + 2] = (p.at(ii + 1, jj + 1) - p.at(ii + 1, jj - 1) -
                                      p.at(ii - 1, jj + 1) + p.at(ii - 1, jj - 1)) *
                                     ihxy;
            }
        return;
    }
    out.dim = 1;
    out.du.resize(n);
    out.d2u.resize(n);
    const GhostValues ghosts = extend_ghost(field, policy, 1);
    diff_line(field.values, grid_spacing(field.grid), ghosts.left[0], ghosts.right[0], out.du,
              out.d2u);
}

Derivatives diff_ops(const ScalarField& field, const FarFieldPolicy& policy) {
    Derivatives out;
    diff_ops_into(field, policy, out);
    return out;
}

}  // namespace mcflab
