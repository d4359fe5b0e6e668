#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hopf/curves.hpp"
#include "oracles.hpp"

using namespace hopf;
using std::numbers::pi;

namespace {

CurveSpec ellipse21() {
    CurveSpec s;
    s.kind = SurfaceKind::Flat;
    s.shape = EllipseSpec{2.0, 1.0};
    return s;
}

CurveSpec unit_circle() {
    CurveSpec s;
    s.kind = SurfaceKind::Flat;
    SupportFourierSpec sf;
    sf.h.c0 = 1.0;
    s.shape = sf;
    return s;
}

CurveSpec support_curve(double c0, int m, double amp) {
    CurveSpec s;
    s.kind = SurfaceKind::Flat;
    SupportFourierSpec sf;
    sf.h.c0 = c0;
    sf.h.harmonics.push_back({m, amp, 0.0});
    s.shape = sf;
    return s;
}

CurveSpec sphere_circle(double r) {
    CurveSpec s;
    s.kind = SurfaceKind::Sphere;
    s.shape = GeodesicCircleSpec{r};
    return s;
}

CurveSpec hyper_circle(double r) {
    CurveSpec s;
    s.kind = SurfaceKind::Hyperbolic;
    s.shape = GeodesicCircleSpec{r};
    return s;
}

CurveSpec radial_graph(SurfaceKind kind, double r0, int m, double amp) {
    CurveSpec s;
    s.kind = kind;
    RadialGraphSpec rg;
    rg.rho.c0 = r0;
    rg.rho.harmonics.push_back({m, amp, 0.0});
    s.shape = rg;
    return s;
}

// Perimeter of the ellipse by adaptive quadrature of the arclength integrand;
// the frozen value below was produced by this oracle.
double ellipse_perimeter_oracle(double a, double b) {
    return oracle::adaptive_quadrature(
        [a, b](double t) {
            double sa = a * std::sin(t), cb = b * std::cos(t);
            return std::sqrt(sa * sa + cb * cb);
        },
        0.0, 2.0 * pi, 1e-14);
}

constexpr double kEllipseP = 9.688448220547676;  // frozen from the oracle above

}  // namespace

TEST_CASE("ellipse {2,1} invariants against oracle values") {
    SampledCurve c = build_curve(ellipse21(), 4096);
    CHECK(std::abs(c.perimeter() - ellipse_perimeter_oracle(2.0, 1.0)) < 1e-9);
    CHECK(std::abs(c.perimeter() - kEllipseP) < 1e-9);
    CHECK(c.area() == doctest::Approx(2.0 * pi).epsilon(1e-12));      // pi a b
    CHECK(c.k_min() == doctest::Approx(0.25).epsilon(1e-10));         // b / a^2
    CHECK(std::abs(curve_invariants(c).gb_residual) < 1e-8);
    // Independent area via Green's theorem.
    CHECK(curve_invariants(c).area_independent == doctest::Approx(2.0 * pi).epsilon(1e-10));
}

TEST_CASE("geodesic circles match closed forms") {
    SampledCurve cs = build_curve(sphere_circle(0.5), 1024);
    CHECK(cs.perimeter() == doctest::Approx(2.0 * pi * std::sin(0.5)).epsilon(1e-12));
    CHECK(cs.area() == doctest::Approx(2.0 * pi * (1.0 - std::cos(0.5))).epsilon(1e-12));
    CHECK(cs.k_min() == doctest::Approx(1.0 / std::tan(0.5)).epsilon(1e-12));
    CHECK(std::abs(curve_invariants(cs).gb_residual) < 1e-10);
    CHECK(cs.hemisphere_contained());

    SampledCurve ch = build_curve(hyper_circle(1.0), 1024);
    CHECK(ch.perimeter() == doctest::Approx(2.0 * pi * std::sinh(1.0)).epsilon(1e-12));
    CHECK(ch.area() == doctest::Approx(2.0 * pi * (std::cosh(1.0) - 1.0)).epsilon(1e-12));
    CHECK(ch.k_min() == doctest::Approx(1.0 / std::tanh(1.0)).epsilon(1e-12));
    CHECK(ch.k_min() > 1.0);  // horocyclic convexity holds for every radius
    CHECK(std::abs(curve_invariants(ch).gb_residual) < 1e-10);
}

TEST_CASE("unit circle via its support function") {
    SampledCurve c = build_curve(unit_circle(), 1024);
    CHECK(c.perimeter() == doctest::Approx(2.0 * pi).epsilon(1e-13));
    CHECK(c.area() == doctest::Approx(pi).epsilon(1e-13));
    CHECK(c.k_min() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(curve_invariants(c).gb_residual) < 1e-10);
}

TEST_CASE("frame interpolation") {
    SampledCurve c = build_curve(unit_circle(), 1024);
    CurveFrame f = c.frame_at(pi / 2.0);
    CHECK((f.point.v - Eigen::Vector3d(0, 1, 0)).norm() < 1e-10);
    CHECK((f.tangent.v - Eigen::Vector3d(-1, 0, 0)).norm() < 1e-10);
    CHECK(f.k == doctest::Approx(1.0).epsilon(1e-10));

    SampledCurve e = build_curve(ellipse21(), 4096);
    CurveFrame v = e.frame_at(0.0);  // vertex (2, 0)
    CHECK((v.point.v - Eigen::Vector3d(2, 0, 0)).norm() < 1e-10);
    CHECK(v.k == doctest::Approx(2.0).epsilon(1e-10));  // a / b^2

    // Periodicity: s = P + 0.3 is the same point as s = 0.3.
    CurveFrame g1 = e.frame_at(e.perimeter() + 0.3);
    CurveFrame g2 = e.frame_at(0.3);
    CHECK((g1.point.v - g2.point.v).norm() < 1e-12);
    CHECK(g1.k == doctest::Approx(g2.k).epsilon(1e-12));
}

TEST_CASE("strict convexity is enforced") {
    // h + h'' changes sign once amp * (m^2 - 1) > 1.
    CHECK_THROWS_AS(build_curve(support_curve(1.0, 3, 0.2), 512), ValidationError);
    CHECK_NOTHROW(build_curve(support_curve(1.0, 3, 0.05), 512));
    CHECK_THROWS_AS(build_curve(ellipse21(), 64), ValidationError);  // n_samples too small
}

TEST_CASE("hemisphere containment is enforced for spherical radial graphs") {
    CHECK_THROWS_AS(build_curve(radial_graph(SurfaceKind::Sphere, 1.58, 2, 0.0), 512),
                    ValidationError);
    SampledCurve ok = build_curve(radial_graph(SurfaceKind::Sphere, 0.6, 2, 0.05), 1024);
    CHECK(ok.hemisphere_contained());
}

TEST_CASE("Cauchy formula: perimeter equals the support integral") {
    for (double amp : {0.0, 0.03, 0.06}) {
        SampledCurve c = build_curve(support_curve(1.1, 4, amp), 2048);
        CHECK(std::abs(c.perimeter() - 2.0 * pi * 1.1) < 1e-9);
    }
}

TEST_CASE("radial graph invariants and Gauss-Bonnet convergence") {
    SampledCurve c = build_curve(radial_graph(SurfaceKind::Sphere, 0.6, 3, 0.04), 1024);
    CHECK(c.k_min() > 0.0);
    double r1 = std::abs(curve_invariants(c).gb_residual);

    SampledCurve c2 = build_curve(radial_graph(SurfaceKind::Sphere, 0.6, 3, 0.04), 2048);
    double r2 = std::abs(curve_invariants(c2).gb_residual);
    // Quadrature-order decay, unless both already sit at the rounding floor.
    CHECK((r1 / std::max(r2, 1e-300) >= 4.0 || (r1 < 1e-10 && r2 < 1e-10)));

    SampledCurve h = build_curve(radial_graph(SurfaceKind::Hyperbolic, 0.8, 2, 0.05), 1024);
    CHECK(h.k_min() > 1.0);  // stays horocyclically convex
    CHECK(std::abs(curve_invariants(h).gb_residual) < 1e-6);
}

TEST_CASE("every built curve is strictly convex") {
    for (const CurveSpec& spec :
         {ellipse21(), unit_circle(), support_curve(1.0, 5, 0.02), sphere_circle(0.7),
          hyper_circle(0.5), radial_graph(SurfaceKind::Sphere, 0.5, 2, 0.03),
          radial_graph(SurfaceKind::Hyperbolic, 0.7, 3, 0.02)}) {
        SampledCurve c = build_curve(spec, 512);
        CHECK(c.k_min() > 0.0);
        CHECK(c.perimeter() > 0.0);
        CHECK(c.area() > 0.0);
    }
}
