// Library of initial data covering the hypothesis classes of the uniqueness
// results, the bounded-slope constant c(M), and the compact doubling
// construction.
#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "mcflab/curve.hpp"
#include "mcflab/grid.hpp"

namespace mcflab {

struct InitialDatum {
    std::string name;
    // Section profile: f(x) in 1D, f(r) for rotationally symmetric data.
    std::function<double(double)> profile;
    // Present when the datum extends to R^2 (radial composition or a plane).
    std::function<double(double, double)> profile2d;
    bool proper = false;
    bool convex = false;
    // Global Lipschitz constant; nullopt means locally Lipschitz only.
    std::optional<double> lipschitz_constant;
    // Analytic sup of v0 over {u0 < M} when available in closed form.
    std::function<double(double)> slope_bound_c;
    // True for data whose slopes grow without bound on bounded-height sets.
    bool condition_41_unbounded = false;
    // Restricted-domain data carry their open interval (grim reaper).
    std::optional<std::pair<double, double>> domain;

    double eval(double x) const { return profile(x); }
    double eval2d(double x, double y) const;
    // The same datum shifted vertically by `c`.
    InitialDatum shifted(double c) const;
};

// Names: line(a,b), abs, cone(a), paraboloid, cosh, grim_reaper, oscillatory.
InitialDatum builtin(const std::string& name);

// Piecewise-linear datum from a seeded pseudorandom walk with increments in
// [-L h, L h]; deterministic per seed, measured Lipschitz constant <= L.
InitialDatum random_lipschitz(std::uint64_t seed, double slope_bound, const Grid1D& grid);

struct SlopeBoundConstant {
    double value = 0.0;
    bool unbounded = false;  // sup exceeded the cap: c(M) = infinity flag
};

// max of v0 = sqrt(1 + u0'^2) over sampled nodes with u0 < M; one-sided
// slopes at the edge of the sublevel set.
SlopeBoundConstant boundedcase_constant(const InitialDatum& datum, const GridVariant& grid,
                                        double M, double cap = 1e6);

// Doubled compact curve: the graph points with u0 <= height joined with their
// reflection across the line x2 = height; crossings located by linear
// interpolation.
ClosedCurve double_at_height(const InitialDatum& datum, const Grid1D& grid, double height);

}  // namespace mcflab
