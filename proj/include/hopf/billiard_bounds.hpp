#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hopf/curves.hpp"

namespace hopf {

/// Closed-form lower bounds on the non-minimal phase-space fraction delta for
/// a convex billiard table with invariants (P, A, k_min). Bounds are present
/// only where applicable: b1/b2 on the plane, b3 on the sphere inside an open
/// hemisphere, b4 on the hyperbolic plane for horocyclically convex tables
/// (k_min > 1). Tiny negative values produced by rounding on zero-defect
/// tables are clamped to 0.
struct BoundReport {
    SurfaceKind surface;
    double P;
    double A;
    double k_min;
    std::optional<double> b2_strong;
    std::optional<double> b2_weak;
    std::optional<double> b1;
    std::optional<double> b3;
    std::optional<double> b4;
    double best;  // max over present bounds
    std::vector<std::string> notes;  // applicability reasons for absent bounds
};

/// Relative tolerance on the isoperimetric defect below which negatives clamp
/// to zero and above which a violated isoperimetric inequality is an error.
inline constexpr double kIsoperimetricTol = 1e-9;

BoundReport evaluate_billiard_bounds(SurfaceKind surface, double P, double A, double k_min,
                                     bool hemisphere_contained);

/// Convenience overload pulling invariants and flags from a built curve.
BoundReport evaluate_billiard_bounds(const SampledCurve& c);

}  // namespace hopf
