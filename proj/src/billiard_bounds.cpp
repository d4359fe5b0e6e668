#include "hopf/billiard_bounds.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "hopf/errors.hpp"

namespace hopf {

namespace {

using std::numbers::pi;

// Clamp a defect-proportional value: rounding noise on zero-defect tables may
// push it slightly negative; anything below the tolerance is a real violation.
double clamp_bound(double value, double scale) {
    if (value >= 0.0) return value;
    if (value > -kIsoperimetricTol * scale) return 0.0;
    std::ostringstream os;
    os << "bound evaluated to " << value
       << ": isoperimetric precondition violated (inconsistent curve invariants)";
    throw InternalConsistencyError(os.str());
}

}  // namespace

BoundReport evaluate_billiard_bounds(SurfaceKind surface, double P, double A, double k_min,
                                     bool hemisphere_contained) {
    if (!(P > 0.0) || !(A > 0.0)) throw ValidationError("bounds require P > 0 and A > 0");
    if (!(k_min > 0.0)) throw ValidationError("bounds require k_min > 0");

    BoundReport r;
    r.surface = surface;
    r.P = P;
    r.A = A;
    r.k_min = k_min;
    r.best = 0.0;

    const double scale = std::max(1.0, P * P);
    switch (surface) {
        case SurfaceKind::Flat: {
            double defect = clamp_bound(P * P - 4.0 * pi * A, scale);
            r.b2_strong = pi * defect / (4.0 * P * (P + std::sqrt(4.0 * pi * A)));
            r.b2_weak = pi * defect / (8.0 * P * P);
            r.b1 = defect * k_min / (8.0 * P);
            r.notes.push_back("b3/b4 apply to curved surfaces only");
            break;
        }
        case SurfaceKind::Sphere: {
            if (!hemisphere_contained) {
                r.notes.push_back("b3 inapplicable: curve not inside an open hemisphere");
                break;
            }
            double defect = clamp_bound(P * P + A * A - 4.0 * pi * A, scale);
            double root = std::sqrt(P * P + (2.0 * pi - A) * (2.0 * pi - A));
            double prefactor = pi / (2.0 * std::atan(1.0 / k_min));
            r.b3 = prefactor * defect / (P * (2.0 * pi + root));
            break;
        }
        case SurfaceKind::Hyperbolic: {
            if (!(k_min > 1.0)) {
                r.notes.push_back("b4 inapplicable: requires horocyclic convexity (k_min > 1)");
                break;
            }
            if (!(P < 2.0 * pi + A))
                throw InternalConsistencyError(
                    "hyperbolic invariants violate P < 2*pi + A (Gauss-Bonnet with k > 1)");
            double defect = clamp_bound(P * P - A * A - 4.0 * pi * A, scale);
            double root = std::sqrt((2.0 * pi + A) * (2.0 * pi + A) - P * P);
            double prefactor = pi / (2.0 * std::atanh(1.0 / k_min));
            r.b4 = prefactor * defect / (P * (2.0 * pi + root));
            break;
        }
    }

    for (const auto& b : {r.b2_strong, r.b2_weak, r.b1, r.b3, r.b4})
        if (b) r.best = std::max(r.best, *b);
    return r;
}

BoundReport evaluate_billiard_bounds(const SampledCurve& c) {
    return evaluate_billiard_bounds(c.kind(), c.perimeter(), c.area(), c.k_min(),
                                    c.hemisphere_contained());
}

}  // namespace hopf
