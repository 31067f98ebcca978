// Parametric curve shortening flow for closed planar polylines, used by the
// compact doubling experiments.
#pragma once

#include <vector>

#include "mcflab/common.hpp"

namespace mcflab {

// Cyclic planar polyline.
struct ClosedCurve {
    std::vector<Vec2> points;
    double time = 0.0;
};

// Full construction-time invariants: at least 16 points, consecutive points
// distinct, simple polygon (no self-intersections).
ClosedCurve make_closed_curve(std::vector<Vec2> points, double time);

double perimeter(const ClosedCurve& c);
double min_segment_length(const ClosedCurve& c);
// Signed exterior turning angle at each vertex (positive for a left turn on a
// counterclockwise curve); convex curves have all angles >= -tol.
std::vector<double> turning_angles(const ClosedCurve& c);
bool is_convex(const ClosedCurve& c, double tol = 1e-9);

// Point-in-polygon with tolerance: true when p is inside or within tol of the
// boundary.
bool polygon_contains(const ClosedCurve& poly, Vec2 p, double tol);
// True when every vertex of `inner` lies inside (or within tol of) `outer`.
bool encloses(const ClosedCurve& outer, const ClosedCurve& inner, double tol);

// Discrete curvature vector kappa * N at b from the circle through (a, b, c);
// zero for collinear points.
Vec2 curvature_vector(Vec2 a, Vec2 b, Vec2 c);

// Redistribute to n points at uniform arclength by linear interpolation.
ClosedCurve resample_uniform(const ClosedCurve& c, std::size_t n_points);

// One explicit step p += dt * kappa N. Requires dt <= cfl * (min segment)^2 / 2.
ClosedCurve step_closed_curve(const ClosedCurve& c, double dt);

struct CurveFlowConfig {
    double cfl = 0.4;
    double t_end = 0.0;
    std::size_t redistribute_every = 10;
    std::vector<double> record_times;  // snapshot times hit exactly (ascending)
};

struct CurveTrajectory {
    std::vector<ClosedCurve> snapshots;

    const ClosedCurve& final() const { return snapshots.back(); }
    std::size_t snapshot_at(double t, double tol = 1e-9) const;
};

CurveTrajectory evolve_closed_curve(const ClosedCurve& initial, const CurveFlowConfig& config);

}  // namespace mcflab
