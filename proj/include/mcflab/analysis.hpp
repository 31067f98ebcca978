// Numerical evaluation of the inequalities, barriers, functionals, and
// monitors attached to the evolution problems, each reported with a signed
// worst margin.
#pragma once

#include <array>

#include "mcflab/curve.hpp"
#include "mcflab/flow.hpp"

namespace mcflab {

// --- reports ----------------------------------------------------------------

struct InvariantReport {
    std::string check;
    double margin = 0.0;  // signed; >= -tolerance passes
    std::size_t worst_node = 0;
    double worst_time = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string anchor;  // the inequality being checked, as a formula string

    static InvariantReport from_margin(std::string check, double margin, std::size_t node,
                                       double t, double tolerance, std::string anchor);
};

// --- arctan increment bound --------------------------------------------------

struct ArctanBoundResult {
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = false;
};

// (arctan v1 - arctan v2)_+ <= 2 (v1 - v2)_+^gamma, exactly, for
// v1, v2 >= 0 and gamma in (0, 1].
ArctanBoundResult lemma21_check(double v1, double v2, double gamma);

// --- cutoff and the slope-gap decay functional -------------------------------

// psi(rho) = 1 for rho <= 1, 0 for rho >= 2, quintic smoothstep between;
// C^2 at the joints, monotone nonincreasing on [1, 2].
struct CutoffSpec {
    double eval(double rho) const;
};

// Quadrature of |psi''|^{1/(1-gamma)} psi^{-gamma/(1-gamma)} over [1, 2];
// finite for gamma < 1/2, exposed as a diagnostic for gamma <= 1/2 only.
double cutoff_weighted_integral(const CutoffSpec& cutoff, double gamma,
                                std::size_t quadrature_points = 20000);

struct HPFunctionalSeries {
    double gamma = 0.0;
    double cutoff_scale = 0.0;  // R
    std::vector<double> times;
    std::vector<double> values;
    int ambient_dim = 1;
    bool radial = false;
};

// I(t) = integral of (v1 - v2)_+ against the cutoff, trapezoid rule; 1D uses
// phi(x) = psi(|x|/R), the radial variant psi((r^2 + 2(n-1)t)/R^2) with
// measure r^{n-1} dr.
HPFunctionalSeries hp_functional(const Trajectory& a, const Trajectory& b, double gamma,
                                 double R, const CutoffSpec& cutoff);

// --- barriers, properness, curvature bounds ----------------------------------

struct BarrierSpec {
    double C = 0.0;                  // initial lower bound on the ball
    double R = 1.0;                  // ball radius (> 1 in the estimate's setting)
    std::vector<double> x0_spatial;  // center, spatial part (radial: on the axis)
    double x0_height = 0.0;          // center, graph direction
};

// Verifies u0 >= C on {|X - X0| <= R}, X = (x, u0(x)), then reports the
// margin min over the parabolic ball |X - X0|^2 + 2nt <= R^2/2 of
// u - (C - 10 t / R).
InvariantReport barrier_check(const Trajectory& traj, const BarrierSpec& spec, double tolerance);

struct PropernessSeries {
    std::vector<double> levels;  // rho values
    std::vector<double> times;
    // min over {|x| >= rho} of u, per level and time: values[level][time]
    std::vector<std::vector<double>> min_values;
    bool monotone_in_level = false;
};

PropernessSeries properness_monitor(const Trajectory& traj, const std::vector<double>& levels);

struct BoundedCaseReports {
    std::array<InvariantReport, 3> reports;
    bool initial_curvature_bound_met = false;  // hypothesis of the second bound
    double k = 0.0;                            // 1 / (2 M^2 c(M))
};

// The three sublevel-set bounds driven by the constant c(M): gradient bound
// (M - u)_+^2 v <= M^2 c(M), curvature bound with k = 1/(2 M^2 c(M)), and the
// time-weighted curvature bound. The second is vacuous (reported passing)
// when |A|^2(., 0) <= c(M) fails on {u0 <= M}.
BoundedCaseReports prop42_checks(const Trajectory& traj, double M, double cM,
                                 double tol_gradient, double tol_curvature);

struct ConditionMonitorResult {
    InvariantReport report;
    std::vector<double> times;
    std::vector<double> min_lam_vh;  // per snapshot, interior nodes
    bool min_nondecreasing = false;  // preservation, checked not assumed
};

// Condition check v h^i_j >= -c: margin = min over time of (lam_min_vh + c).
ConditionMonitorResult condition_c_monitor(const Trajectory& traj, double c, double tolerance);

struct SupersolutionGapResult {
    double max_W = 0.0;  // predicted <= 0 up to discretization error
    std::size_t worst_node = 0;
    double worst_time = 0.0;
    double T_star = 0.0;  // min(T, 1/4, 1/(10c))
};

// W = u - ubar - eps (t + eps) u^2 over interior nodes and t in (0, T*];
// both runs must have been shifted so u, ubar >= 1.
SupersolutionGapResult supersolution_gap(const Trajectory& a, const Trajectory& b, double eps,
                                         double c);

struct CurvatureScalingResult {
    double sup = 0.0;  // max over t > 0 of sqrt(t) * max_window |A|
    std::vector<double> times;
    std::vector<double> values;
};

// sqrt(t) * max |A| over {|x| <= window}; should stabilize under refinement.
CurvatureScalingResult ecker_huisken_monitor(const Trajectory& traj, double window);

// Minimized Harnack quantity over interior nodes and snapshot times
// t >= t_start (V = 0 where the surface is not strictly convex).
InvariantReport harnack_monitor(const Trajectory& traj, double t_start, double tolerance);

struct DoublingComparison {
    std::vector<double> heights;
    std::vector<double> times;
    // sup over the window of |curve lower part - graph|: distances[height][time]
    std::vector<std::vector<double>> distances;
    bool monotone_in_height = false;  // distances decrease as height grows
    bool enclosure_ordered = false;   // curve(i) enclosed by curve(i+1) at all times
};

DoublingComparison doubling_comparison(const Trajectory& graph_traj,
                                       const std::vector<CurveTrajectory>& curve_trajs,
                                       const std::vector<double>& heights, double window,
                                       const std::vector<double>& times);

// Resamples the part of the curve below `height` as a graph over |x| <= window
// at the x-nodes provided; throws when the lower part is not graphical there.
std::vector<double> lower_part_as_graph(const ClosedCurve& curve, double height,
                                        const std::vector<double>& x_nodes);

}  // namespace mcflab
