#pragma once

#include <Eigen/Dense>
#include <variant>
#include <vector>

#include "hopf/geometry.hpp"
#include "hopf/periodic_spline.hpp"

namespace hopf {

/// Real trigonometric polynomial c0 + sum_m (a_m cos(m t) + b_m sin(m t)).
struct TrigSeries {
    struct Harmonic {
        int m;
        double a;
        double b;
    };
    double c0 = 0.0;
    std::vector<Harmonic> harmonics;

    double eval(double t) const;
    double deriv(double t) const;
    double deriv2(double t) const;
};

/// Planar ellipse with semi-axes a >= b > 0, centered at the origin.
struct EllipseSpec {
    double a;
    double b;
};

/// Planar convex curve given by its support function h(theta); requires
/// h > 0 and h + h'' > 0. Harmonics must have m >= 2 (m = 1 is a translation).
struct SupportFourierSpec {
    TrigSeries h;
};

/// Geodesic circle of radius r about the canonical center of the surface.
struct GeodesicCircleSpec {
    double r;
};

/// Curve written in geodesic polar coordinates about a center point:
/// theta -> exp_center(rho(theta) e(theta)). Sphere or hyperbolic plane only.
struct RadialGraphSpec {
    TrigSeries rho;
    // Center defaults to the pole (0,0,1) of the respective model.
    bool has_center = false;
    SurfacePoint center{{0.0, 0.0, 1.0}};
};

struct CurveSpec {
    SurfaceKind kind = SurfaceKind::Flat;
    std::variant<EllipseSpec, SupportFourierSpec, GeodesicCircleSpec, RadialGraphSpec> shape;
};

struct CurveFrame {
    SurfacePoint point;
    TangentDir tangent;
    double k;
};

/// Closed strictly convex curve resampled to a uniform arclength grid,
/// with C^2 periodic interpolants for position, tangent and curvature.
/// Immutable after construction; safe to share across threads.
class SampledCurve {
public:
    SurfaceKind kind() const { return kind_; }
    int n_samples() const { return n_; }
    double perimeter() const { return perimeter_; }
    double area() const { return area_; }
    double k_min() const { return k_min_; }
    double k_max() const { return k_max_; }
    double gb_residual() const { return gb_residual_; }
    bool hemisphere_contained() const { return hemisphere_contained_; }
    const SurfacePoint& interior_point() const { return interior_; }

    const Eigen::ArrayXd& s_grid() const { return s_grid_; }
    const Eigen::Matrix3Xd& points() const { return points_; }
    const Eigen::Matrix3Xd& tangents() const { return tangents_; }
    const Eigen::ArrayXd& curvature_samples() const { return k_samples_; }

    double wrap(double s) const;
    CurveFrame frame_at(double s) const;
    double curvature_at(double s) const;
    /// Raw position interpolant (not projected to the surface); this is the
    /// curve the billiard root finder sees.
    Eigen::Vector3d position_raw(double s) const;
    Eigen::Vector3d tangent_raw(double s) const;

private:
    friend SampledCurve build_curve(const CurveSpec&, int);

    SurfaceKind kind_;
    int n_ = 0;
    double perimeter_ = 0.0;
    double area_ = 0.0;
    double k_min_ = 0.0;
    double k_max_ = 0.0;
    double gb_residual_ = 0.0;
    bool hemisphere_contained_ = false;
    SurfacePoint interior_{{0.0, 0.0, 0.0}};
    Eigen::ArrayXd s_grid_;
    Eigen::Matrix3Xd points_;
    Eigen::Matrix3Xd tangents_;
    Eigen::ArrayXd k_samples_;
    PeriodicSpline pos_spline_;
    PeriodicSpline tan_spline_;
    PeriodicSpline k_spline_;
};

struct CurveInvariants {
    double perimeter;
    double area;
    double k_min;
    double gb_residual;
    /// Area recomputed by an independent route (Green's theorem on the plane,
    /// Gauss-Bonnet on the curved surfaces).
    double area_independent;
};

/// Gauss-Bonnet consistency tolerance enforced at build time.
inline constexpr double kGaussBonnetTol = 1e-6;
/// Open-hemisphere containment margin (radians) for spherical curves.
inline constexpr double kHemisphereMargin = 1e-3;

SampledCurve build_curve(const CurveSpec& spec, int n_samples = 4096);
CurveInvariants curve_invariants(const SampledCurve& c);

}  // namespace hopf
