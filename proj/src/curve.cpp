#include "mcflab/curve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mcflab {

namespace {

bool segments_intersect(Vec2 p1, Vec2 p2, Vec2 q1, Vec2 q2) {
    const auto orient = [](Vec2 a, Vec2 b, Vec2 c) { return cross(b - a, c - a); };
    const double o1 = orient(p1, p2, q1), o2 = orient(p1, p2, q2);
    const double o3 = orient(q1, q2, p1), o4 = orient(q1, q2, p2);
    return ((o1 > 0) != (o2 > 0)) && ((o3 > 0) != (o4 > 0));
}

void check_basic(const std::vector<Vec2>& pts) {
    ensure(pts.size() >= 16, msg("ClosedCurve: need at least 16 points, got ", pts.size()));
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const Vec2& a = pts[i];
        const Vec2& b = pts[(i + 1) % pts.size()];
        ensure(norm(b - a) > 0.0, msg("ClosedCurve: repeated consecutive point at index ", i));
        ensure(std::isfinite(a.x) && std::isfinite(a.y),
               msg("ClosedCurve: non-finite point at index ", i));
    }
}

}  // namespace

ClosedCurve make_closed_curve(std::vector<Vec2> points, double time) {
    check_basic(points);
    const std::size_t n = points.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            // Skip adjacent segments (they share an endpoint).
            if (j == i + 1 || (i == 0 && j == n - 1)) continue;
            if (segments_intersect(points[i], points[(i + 1) % n], points[j],
                                   points[(j + 1) % n]))
                throw InvalidArgument(
                    msg("ClosedCurve: self-intersection between segments ", i, " and ", j));
        }
    return ClosedCurve{std::move(points), time};
}

double perimeter(const ClosedCurve& c) {
    double total = 0.0;
    const std::size_t n = c.points.size();
    for (std::size_t i = 0; i < n; ++i) total += norm(c.points[(i + 1) % n] - c.points[i]);
    return total;
}

double min_segment_length(const ClosedCurve& c) {
    double m = std::numeric_limits<double>::infinity();
    const std::size_t n = c.points.size();
    for (std::size_t i = 0; i < n; ++i) m = std::min(m, norm(c.points[(i + 1) % n] - c.points[i]));
    return m;
}

std::vector<double> turning_angles(const ClosedCurve& c) {
    const std::size_t n = c.points.size();
    std::vector<double> angles(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 e0 = c.points[i] - c.points[(i + n - 1) % n];
        const Vec2 e1 = c.points[(i + 1) % n] - c.points[i];
        angles[i] = std::atan2(cross(e0, e1), dot(e0, e1));
    }
    return angles;
}

bool is_convex(const ClosedCurve& c, double tol) {
    for (double a : turning_angles(c))
        if (a < -tol) return false;
    return true;
}

namespace {

double distance_to_boundary(const ClosedCurve& poly, Vec2 p) {
    double best = std::numeric_limits<double>::infinity();
    const std::size_t n = poly.points.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a = poly.points[i];
        const Vec2 b = poly.points[(i + 1) % n];
        const Vec2 ab = b - a;
        const double len2 = dot(ab, ab);
        const double s = len2 > 0.0 ? std::clamp(dot(p - a, ab) / len2, 0.0, 1.0) : 0.0;
        best = std::min(best, norm(p - (a + ab * s)));
    }
    return best;
}

}  // namespace

bool polygon_contains(const ClosedCurve& poly, Vec2 p, double tol) {
    // Ray casting along +x.
    bool inside = false;
    const std::size_t n = poly.points.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a = poly.points[i];
        const Vec2 b = poly.points[(i + 1) % n];
        if ((a.y > p.y) != (b.y > p.y)) {
            const double x_cross = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
            if (x_cross > p.x) inside = !inside;
        }
    }
    return inside || distance_to_boundary(poly, p) <= tol;
}

bool encloses(const ClosedCurve& outer, const ClosedCurve& inner, double tol) {
    for (const Vec2& p : inner.points)
        if (!polygon_contains(outer, p, tol)) return false;
    return true;
}

Vec2 curvature_vector(Vec2 a, Vec2 b, Vec2 c) {
    const Vec2 ab = b - a, bc = c - b;
    const double twice_area = cross(ab, bc);
    const double scale = norm(ab) * norm(bc);
    if (std::abs(twice_area) <= 1e-14 * scale) return {0.0, 0.0};
    // Circumcenter from the perpendicular-bisector equations.
    const double d = 2.0 * (a.x * (b.y - c.y) + b.x * (c.y - a.y) + c.x * (a.y - b.y));
    const double a2 = dot(a, a), b2 = dot(b, b), c2 = dot(c, c);
    const Vec2 center{(a2 * (b.y - c.y) + b2 * (c.y - a.y) + c2 * (a.y - b.y)) / d,
                      (a2 * (c.x - b.x) + b2 * (a.x - c.x) + c2 * (b.x - a.x)) / d};
    const Vec2 to_center = center - b;
    const double r2 = dot(to_center, to_center);
    return to_center * (1.0 / r2);
}

ClosedCurve resample_uniform(const ClosedCurve& c, std::size_t n_points) {
    ensure(n_points >= 16, "resample_uniform: need at least 16 points");
    const std::size_t n = c.points.size();
    std::vector<double> arc(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        arc[i + 1] = arc[i] + norm(c.points[(i + 1) % n] - c.points[i]);
    const double total = arc[n];
    ensure_runtime(total > 0.0, "resample_uniform: degenerate curve");

    std::vector<Vec2> out(n_points);
    std::size_t seg = 0;
    for (std::size_t k = 0; k < n_points; ++k) {
        const double s = total * static_cast<double>(k) / static_cast<double>(n_points);
        while (seg + 1 < n && arc[seg + 1] < s) ++seg;
        const double len = arc[seg + 1] - arc[seg];
        const double w = len > 0.0 ? (s - arc[seg]) / len : 0.0;
        const Vec2 p0 = c.points[seg];
        const Vec2 p1 = c.points[(seg + 1) % n];
        out[k] = p0 + (p1 - p0) * w;
    }
    return ClosedCurve{std::move(out), c.time};
}

ClosedCurve step_closed_curve(const ClosedCurve& c, double dt) {
    ensure(dt > 0.0, "step_closed_curve: dt must be positive");
    const double per = perimeter(c);
    ensure_runtime(min_segment_length(c) >= 1e-10 * per, "curve collapsed");
    const std::size_t n = c.points.size();
    std::vector<Vec2> next(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 kn =
            curvature_vector(c.points[(i + n - 1) % n], c.points[i], c.points[(i + 1) % n]);
        next[i] = c.points[i] + kn * dt;
        ensure_runtime(std::isfinite(next[i].x) && std::isfinite(next[i].y),
                       msg("step_closed_curve: non-finite point at index ", i));
    }
    return ClosedCurve{std::move(next), c.time + dt};
}

std::size_t CurveTrajectory::snapshot_at(double t, double tol) const {
    for (std::size_t k = 0; k < snapshots.size(); ++k)
        if (std::abs(snapshots[k].time - t) <= tol) return k;
    throw InvalidArgument(msg("CurveTrajectory: no snapshot at t = ", t));
}

CurveTrajectory evolve_closed_curve(const ClosedCurve& initial, const CurveFlowConfig& config) {
    ensure(config.cfl > 0.0 && config.cfl <= 1.0, "CurveFlowConfig: cfl out of (0,1]");
    ensure(config.t_end >= 0.0, "CurveFlowConfig: negative t_end");
    for (std::size_t k = 1; k < config.record_times.size(); ++k)
        ensure(config.record_times[k] > config.record_times[k - 1],
               "evolve_closed_curve: record_times must be ascending");

    CurveTrajectory traj;
    traj.snapshots.push_back(initial);
    ClosedCurve current = initial;
    std::size_t step = 0;
    std::size_t next_record = 0;
    while (next_record < config.record_times.size() &&
           config.record_times[next_record] <= initial.time)
        ++next_record;

    while (current.time < config.t_end * (1.0 - 1e-14) && config.t_end > 0.0) {
        const double seg = min_segment_length(current);
        double dt = std::min(config.cfl * seg * seg / 2.0, config.t_end - current.time);
        bool hit_record = false;
        if (next_record < config.record_times.size()) {
            const double gap = config.record_times[next_record] - current.time;
            if (gap <= dt * (1.0 + 1e-12)) {
                dt = gap;
                hit_record = true;
            }
        }
        try {
            current = step_closed_curve(current, dt);
        } catch (const RuntimeFailure& e) {
            throw RuntimeFailure(msg("evolve_closed_curve: step ", step + 1, ": ", e.what()));
        }
        if (hit_record) current.time = config.record_times[next_record];
        ++step;
        if (config.redistribute_every > 0 && step % config.redistribute_every == 0)
            current = resample_uniform(current, current.points.size());

        const bool at_end = current.time >= config.t_end * (1.0 - 1e-14);
        if (hit_record || at_end) traj.snapshots.push_back(current);
        if (hit_record) ++next_record;
    }
    return traj;
}

}  // namespace mcflab
