// Second-order central finite differences on the grid types, with policy
// ghosts at truncation boundaries and even reflection at the radial origin.
#pragma once

#include "mcflab/farfield.hpp"
#include "mcflab/grid.hpp"

namespace mcflab {

// First and second derivatives per node. dim 1: du = u_x (or u_r), d2u = u_xx.
// dim 2: du holds (u_x, u_y) pairs, d2u holds (u_xx, u_yy, u_xy) triples.
struct Derivatives {
    int dim = 1;
    std::vector<double> du;
    std::vector<double> d2u;
};

Derivatives diff_ops(const ScalarField& field, const FarFieldPolicy& policy);

// Workspace-reusing variant for the stepping loop.
void diff_ops_into(const ScalarField& field, const FarFieldPolicy& policy, Derivatives& out);

}  // namespace mcflab
