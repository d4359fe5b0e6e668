#include "hopf/geometry.hpp"

#include <cmath>

namespace hopf {

namespace {
constexpr double kModelTol = 1e-12;
// Projection accepts larger drift than validation: it exists to clean up
// accumulated interpolation error.
constexpr double kProjectTol = 1e-6;
}  // namespace

int curvature_sign(SurfaceKind kind) {
    switch (kind) {
        case SurfaceKind::Flat: return 0;
        case SurfaceKind::Sphere: return 1;
        case SurfaceKind::Hyperbolic: return -1;
    }
    return 0;
}

const char* surface_name(SurfaceKind kind) {
    switch (kind) {
        case SurfaceKind::Flat: return "flat";
        case SurfaceKind::Sphere: return "sphere";
        case SurfaceKind::Hyperbolic: return "hyperbolic";
    }
    return "?";
}

void validate_point(SurfaceKind kind, const SurfacePoint& p) {
    const Eigen::Vector3d& v = p.v;
    if (!v.allFinite()) throw ValidationError("surface point has non-finite coordinates");
    switch (kind) {
        case SurfaceKind::Flat:
            if (std::abs(v.z()) > kModelTol)
                throw ValidationError("flat point must have zero third coordinate");
            break;
        case SurfaceKind::Sphere:
            if (std::abs(v.squaredNorm() - 1.0) > kModelTol)
                throw ValidationError("sphere point is not on the unit sphere");
            break;
        case SurfaceKind::Hyperbolic:
            if (std::abs(minkowski_dot(v, v) + 1.0) > kModelTol || v.z() <= 0.0)
                throw ValidationError("hyperbolic point is not on the upper hyperboloid sheet");
            break;
    }
}

void validate_dir(SurfaceKind kind, const SurfacePoint& p, const TangentDir& d) {
    const Eigen::Vector3d& v = d.v;
    if (!v.allFinite()) throw ValidationError("tangent has non-finite coordinates");
    if (std::abs(metric_dot(kind, v, v) - 1.0) > kModelTol)
        throw ValidationError("tangent is not unit length in the model metric");
    switch (kind) {
        case SurfaceKind::Flat:
            if (std::abs(v.z()) > kModelTol)
                throw ValidationError("flat tangent must have zero third coordinate");
            break;
        case SurfaceKind::Sphere:
        case SurfaceKind::Hyperbolic:
            if (std::abs(metric_dot(kind, p.v, v)) > kModelTol)
                throw ValidationError("tangent is not orthogonal to the base point");
            break;
    }
}

SurfacePoint project_point(SurfaceKind kind, const Eigen::Vector3d& v) {
    switch (kind) {
        case SurfaceKind::Flat:
            return {{v.x(), v.y(), 0.0}};
        case SurfaceKind::Sphere: {
            double n = v.norm();
            if (std::abs(n - 1.0) > kProjectTol)
                throw ValidationError("point too far from the unit sphere to project");
            return {v / n};
        }
        case SurfaceKind::Hyperbolic: {
            double q = -minkowski_dot(v, v);
            if (std::abs(q - 1.0) > kProjectTol || v.z() <= 0.0)
                throw ValidationError("point too far from the hyperboloid to project");
            return {v / std::sqrt(q)};
        }
    }
    return {v};
}

TangentDir project_dir(SurfaceKind kind, const SurfacePoint& p, const Eigen::Vector3d& v) {
    Eigen::Vector3d t = v;
    switch (kind) {
        case SurfaceKind::Flat:
            t.z() = 0.0;
            break;
        case SurfaceKind::Sphere:
            t -= p.v.dot(t) * p.v;
            break;
        case SurfaceKind::Hyperbolic:
            // <p,p>_M = -1, so adding <t,p>_M p kills the component along p.
            t += minkowski_dot(t, p.v) * p.v;
            break;
    }
    double n2 = metric_dot(kind, t, t);
    if (!(n2 > 0.0)) throw ValidationError("cannot normalize degenerate tangent");
    return {t / std::sqrt(n2)};
}

Eigen::Vector3d surface_normal(SurfaceKind kind, const SurfacePoint& p, const TangentDir& t) {
    switch (kind) {
        case SurfaceKind::Flat:
            return {-t.v.y(), t.v.x(), 0.0};
        case SurfaceKind::Sphere:
            return p.v.cross(t.v);
        case SurfaceKind::Hyperbolic: {
            Eigen::Vector3d c = p.v.cross(t.v);
            c.z() = -c.z();
            return c;
        }
    }
    return {};
}

std::pair<SurfacePoint, TangentDir> geodesic_advance(SurfaceKind kind, const SurfacePoint& p,
                                                     const TangentDir& d, double s) {
    if (!std::isfinite(s)) throw ValidationError("geodesic_advance: arclength must be finite");
    validate_point(kind, p);
    validate_dir(kind, p, d);
    switch (kind) {
        case SurfaceKind::Flat:
            return {{p.v + s * d.v}, d};
        case SurfaceKind::Sphere: {
            double c = std::cos(s), sn = std::sin(s);
            return {{c * p.v + sn * d.v}, {{-sn * p.v + c * d.v}}};
        }
        case SurfaceKind::Hyperbolic: {
            double ch = std::cosh(s), sh = std::sinh(s);
            return {{ch * p.v + sh * d.v}, {{sh * p.v + ch * d.v}}};
        }
    }
    return {p, d};
}

double geodesic_distance(SurfaceKind kind, const SurfacePoint& p, const SurfacePoint& q) {
    validate_point(kind, p);
    validate_point(kind, q);
    switch (kind) {
        case SurfaceKind::Flat:
            return (p.v - q.v).norm();
        case SurfaceKind::Sphere: {
            double c = p.v.dot(q.v);
            if (c <= -1.0 + kModelTol)
                throw ValidationError("spherical distance undefined for antipodal points");
            return std::acos(std::clamp(c, -1.0, 1.0));
        }
        case SurfaceKind::Hyperbolic: {
            double c = -minkowski_dot(p.v, q.v);
            return std::acosh(std::max(c, 1.0));
        }
    }
    return 0.0;
}

JacobiState jacobi_flight(SurfaceKind kind, const JacobiState& state, double L) {
    if (!(L >= 0.0)) throw ValidationError("jacobi_flight: length must be nonnegative");
    switch (kind) {
        case SurfaceKind::Flat:
            return {state.j + L * state.jp, state.jp};
        case SurfaceKind::Sphere: {
            double c = std::cos(L), s = std::sin(L);
            return {state.j * c + state.jp * s, -state.j * s + state.jp * c};
        }
        case SurfaceKind::Hyperbolic: {
            double c = std::cosh(L), s = std::sinh(L);
            return {state.j * c + state.jp * s, state.j * s + state.jp * c};
        }
    }
    return state;
}

TangentDir direction_towards(SurfaceKind kind, const SurfacePoint& p, const SurfacePoint& q) {
    switch (kind) {
        case SurfaceKind::Flat:
            return project_dir(kind, p, q.v - p.v);
        case SurfaceKind::Sphere:
            return project_dir(kind, p, q.v - p.v.dot(q.v) * p.v);
        case SurfaceKind::Hyperbolic:
            return project_dir(kind, p, q.v + minkowski_dot(q.v, p.v) * p.v);
    }
    return {{}};
}

}  // namespace hopf
