// Far-field extension policies: how a truncated entire graph continues past
// the computational window. The uniqueness results predict interior
// insensitivity to this choice, which the probe experiments measure.
#pragma once

#include <functional>
#include <vector>

#include "mcflab/grid.hpp"

namespace mcflab {

enum class FarFieldKind {
    LinearExtrapolate,          // continue the last one-sided slope
    FrozenInitialSlope,         // continue with the slope u_0 had at the boundary
    QuadraticExtrapolate,       // fit the last three nodes
    ClampedInitialContinuation  // continue with u_0, shifted to the current boundary value
};

struct FarFieldPolicy {
    FarFieldKind kind = FarFieldKind::LinearExtrapolate;
    // FrozenInitialSlope: one-sided slopes of u_0 at each boundary.
    double frozen_left = 0.0;
    double frozen_right = 0.0;
    // ClampedInitialContinuation: the initial profile, evaluable outside the
    // window. Bound at setup time; not part of the serialized variant tag.
    std::function<double(double)> initial_profile;
    std::function<double(double, double)> initial_profile_2d;

    static FarFieldPolicy linear() { return {}; }
    static FarFieldPolicy quadratic() { return {FarFieldKind::QuadraticExtrapolate, 0, 0, {}, {}}; }
    static FarFieldPolicy frozen_from(const ScalarField& u0);
    static FarFieldPolicy clamped(std::function<double(double)> profile);
    static FarFieldPolicy clamped2d(std::function<double(double, double)> profile);
};

// Ghost values beyond each boundary; left[k] extends k+1 spacings below the
// first node, right[k] extends k+1 spacings past the last node.
struct GhostValues {
    std::vector<double> left;
    std::vector<double> right;
};

// Ghost extension for 1D and radial fields. At r = 0 a radial field always
// uses even reflection u(-r) = u(r), never the policy.
GhostValues extend_ghost(const ScalarField& field, const FarFieldPolicy& policy,
                         std::size_t width);

// 2D fields are padded whole: rows are extended in x, then every column of
// the widened array in y, which also defines the corner ghosts.
struct PaddedField2D {
    std::size_t width = 0;
    std::size_t nx = 0, ny = 0;  // padded extents
    std::vector<double> values;

    double at(std::ptrdiff_t i, std::ptrdiff_t j) const {
        const auto w = static_cast<std::ptrdiff_t>(width);
        return values[static_cast<std::size_t>(i + w) + nx * static_cast<std::size_t>(j + w)];
    }
};

PaddedField2D pad_field_2d(const ScalarField& field, const FarFieldPolicy& policy,
                           std::size_t width);

}  // namespace mcflab
