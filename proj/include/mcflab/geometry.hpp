// Pointwise geometric quantities of a graph: gradient function v, induced
// metric, diffusion matrix, second fundamental form, mean curvature, |A|^2,
// the smallest eigenvalue of v * h^i_j, and the Harnack quantity.
#pragma once

#include <cstddef>
#include <optional>

#include "mcflab/stencil.hpp"

namespace mcflab {

// --- per-point ops, graph dimension 1 -------------------------------------

inline double gradient_function(double ux) { return std::sqrt(1.0 + ux * ux); }

// Diffusion coefficient 1 - ux^2 / (1 + ux^2) = 1 / (1 + ux^2).
inline double diffusion_coefficient(double ux) { return 1.0 / (1.0 + ux * ux); }

struct Shape1D {
    double b = 0.0;   // second fundamental form, lower index: u_xx / v
    double h = 0.0;   // shape operator: u_xx / v^3
    double H = 0.0;   // mean curvature (= h in dimension 1)
    double A2 = 0.0;  // |A|^2
};

Shape1D shape_operator(double ux, double uxx);

// Smallest lambda with v * b x = lambda * g x; dimension 1 reduces to v b / g.
double condition_eigenvalue(double v, double g, double b);

// --- per-point ops, graph dimension 2 -------------------------------------

double gradient_function(Vec2 du);
Sym2 induced_metric(Vec2 du);     // g_ij = delta_ij + D_i u D_j u
Sym2 diffusion_matrix(Vec2 du);   // a^ij = delta_ij - D_i u D_j u / (1 + |Du|^2)

struct Shape2D {
    Sym2 b;           // b_ij = D_ij u / v
    Mat2 h;           // h^i_j = a^il b_lj
    double H = 0.0;   // trace of h
    double A2 = 0.0;  // h^i_j h^j_i
};

Shape2D shape_operator(Vec2 du, Sym2 d2u);

double condition_eigenvalue(double v, const Sym2& g, const Sym2& b);

// --- per-point ops, rotationally symmetric graphs in R^{n+1} ---------------

// ur_over_r must carry its origin limit u_rr(0) when r = 0.
struct RadialShape {
    double v = 0.0;
    double kappa_radial = 0.0;   // u_rr / v^3
    double kappa_angular = 0.0;  // (u_r / r) / v, multiplicity n - 1
    double H = 0.0;
    double A2 = 0.0;
    double lam_min_vh = 0.0;     // min(u_rr / v^2, u_r / r)
};

RadialShape radial_shape(double ur, double urr, double ur_over_r, int ambient_dim);

// --- field-level sweep ------------------------------------------------------

struct GeometricData {
    Derivatives derivs;
    std::vector<double> v;
    std::vector<double> H;
    std::vector<double> A2;
    std::vector<double> lam_min_vh;
};

GeometricData compute_geometry(const ScalarField& field, const FarFieldPolicy& policy);

// --- Harnack quantity -------------------------------------------------------

// Horizontal components V^i of a tangent vector V^i e_i, e_i = (d_i, D_i u).
struct TangentVector {
    double c1 = 0.0;
    double c2 = 0.0;
};

// Evaluates Z(V) = dH/dt|_flow + 2 V^i d_i H + b_ij V^i V^j + H / (2t) from
// three consecutive snapshots of one run. The time derivative along the
// normal flow is the centered fixed-x difference minus the tangential drift
// T^i d_i H with T^i = v H g^{ij} D_j u.
class HarnackEvaluator {
public:
    HarnackEvaluator(const ScalarField& prev, const ScalarField& curr, const ScalarField& next,
                     const FarFieldPolicy& policy);

    double time() const { return time_; }
    std::size_t n_nodes() const { return geom_.v.size(); }

    double at(std::size_t node, const TangentVector& V) const;
    // True when the second fundamental form is strictly positive definite.
    bool strictly_convex(std::size_t node) const;
    // Z at the analytic minimizer b V = -dH; requires strictly_convex.
    double minimized(std::size_t node) const;

private:
    double flow_time_derivative(std::size_t node) const;

    double time_;
    bool radial_ = false;
    int ambient_dim_ = 1;
    double h_ = 0.0;
    GeometricData geom_;
    std::vector<double> dH_;        // spatial gradient of H (dim entries per node)
    std::vector<double> Ht_fixed_;  // centered fixed-x time derivative of H
};

// One-shot forms of the evaluator. V = nullopt requests the minimizer.
double harnack_quantity(const ScalarField& prev, const ScalarField& curr,
                        const ScalarField& next, const FarFieldPolicy& policy, std::size_t node,
                        const std::optional<TangentVector>& V);

}  // namespace mcflab
