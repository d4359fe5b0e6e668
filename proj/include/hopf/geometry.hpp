#pragma once

#include <Eigen/Dense>
#include <utility>

#include "hopf/errors.hpp"

namespace hopf {

/// The three constant-curvature model surfaces. The sphere is the unit
/// sphere in R^3, the hyperbolic plane is the upper sheet of the unit
/// hyperboloid in Minkowski R^{2,1} (signature ++-).
enum class SurfaceKind { Flat, Sphere, Hyperbolic };

int curvature_sign(SurfaceKind kind);  // 0, +1, -1
const char* surface_name(SurfaceKind kind);

/// Point on a model surface.
///  Flat:       (x, y, 0)
///  Sphere:     unit vector in R^3
///  Hyperbolic: hyperboloid vector v with <v,v>_M = -1, v.z > 0
struct SurfacePoint {
    Eigen::Vector3d v;

    static SurfacePoint flat(double x, double y) { return {{x, y, 0.0}}; }
};

/// Unit tangent vector at a SurfacePoint, in the model metric.
struct TangentDir {
    Eigen::Vector3d v;

    static TangentDir flat(double dx, double dy) { return {{dx, dy, 0.0}}; }
};

/// Transversal Jacobi field value and its arclength derivative.
struct JacobiState {
    double j;
    double jp;
};

/// Minkowski product with signature (+, +, -).
inline double minkowski_dot(const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
    return a.x() * b.x() + a.y() * b.y() - a.z() * b.z();
}

/// Ambient model metric: Euclidean for Flat/Sphere, Minkowski for Hyperbolic.
inline double metric_dot(SurfaceKind kind, const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
    return kind == SurfaceKind::Hyperbolic ? minkowski_dot(a, b) : a.dot(b);
}

void validate_point(SurfaceKind kind, const SurfacePoint& p);
void validate_dir(SurfaceKind kind, const SurfacePoint& p, const TangentDir& d);

/// Renormalize a nearly-valid point back onto the model surface.
SurfacePoint project_point(SurfaceKind kind, const Eigen::Vector3d& v);

/// Project a vector onto the tangent space at p and normalize it.
TangentDir project_dir(SurfaceKind kind, const SurfacePoint& p, const Eigen::Vector3d& v);

/// In-surface normal to (p, t), oriented so that curves traversed
/// counterclockwise have it pointing into the enclosed region:
///  Flat: (-t_y, t_x), Sphere: p x t, Hyperbolic: eta * (p x t).
Eigen::Vector3d surface_normal(SurfaceKind kind, const SurfacePoint& p, const TangentDir& t);

/// Closed-form geodesic advancement by arclength s, returning the endpoint
/// and the parallel-transported direction. No ODE integration.
std::pair<SurfacePoint, TangentDir> geodesic_advance(SurfaceKind kind, const SurfacePoint& p,
                                                     const TangentDir& d, double s);

/// Geodesic distance. Spherical antipodal pairs are rejected (non-unique).
double geodesic_distance(SurfaceKind kind, const SurfacePoint& p, const SurfacePoint& q);

/// Free flight of a Jacobi field over length L: solves J'' + kappa J = 0.
JacobiState jacobi_flight(SurfaceKind kind, const JacobiState& state, double L);

/// Wronskian of two Jacobi states; conserved by jacobi_flight.
inline double jacobi_wronskian(const JacobiState& a, const JacobiState& b) {
    return a.j * b.jp - b.j * a.jp;
}

/// Initial direction of the geodesic from p towards q (undefined for p = q).
TangentDir direction_towards(SurfaceKind kind, const SurfacePoint& p, const SurfacePoint& q);

}  // namespace hopf
