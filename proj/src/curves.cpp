#include "hopf/curves.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

namespace hopf {

namespace {

using std::numbers::pi;

constexpr int kMinSamples = 256;
constexpr int kFineFactor = 8;  // convexity / oversampling factor

// 5-point Gauss-Legendre nodes and weights on [-1, 1].
constexpr double kGlNode[5] = {-0.9061798459386640, -0.5384693101056831, 0.0,
                               0.5384693101056831, 0.9061798459386640};
constexpr double kGlWeight[5] = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                 0.4786286704993665, 0.2369268850561891};

struct ParamCurve {
    double t_period;
    std::function<Eigen::Vector3d(double)> point;
    std::function<Eigen::Vector3d(double)> dpoint;  // d gamma / dt
    std::function<double(double)> speed;
    std::function<double(double)> curvature;
};

double gl5(const std::function<double(double)>& f, double a, double b) {
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double acc = 0.0;
    for (int i = 0; i < 5; ++i) acc += kGlWeight[i] * f(mid + half * kGlNode[i]);
    return acc * half;
}

// Geodesic curvature from finite differences of the tangent frame,
// Richardson-extrapolated central differences in the curve parameter.
double fd_curvature(const ParamCurve& pc, SurfaceKind kind, double t, double h) {
    auto tangent = [&](double tt) {
        Eigen::Vector3d dp = pc.dpoint(tt);
        double sp = std::sqrt(std::abs(metric_dot(kind, dp, dp)));
        return Eigen::Vector3d(dp / sp);
    };
    SurfacePoint p{pc.point(t)};
    Eigen::Vector3d tv = tangent(t);
    Eigen::Vector3d nrm = surface_normal(kind, p, TangentDir{tv});
    auto deriv_dot_n = [&](double hh) {
        Eigen::Vector3d dT = (tangent(t + hh) - tangent(t - hh)) / (2.0 * hh);
        return metric_dot(kind, dT, nrm);
    };
    double d1 = deriv_dot_n(h), d2 = deriv_dot_n(0.5 * h);
    return (4.0 * d2 - d1) / 3.0 / pc.speed(t);
}

ParamCurve make_ellipse(const EllipseSpec& e) {
    if (!(e.b > 0.0) || !(e.a >= e.b))
        throw ValidationError("ellipse requires a >= b > 0");
    ParamCurve pc;
    pc.t_period = 2.0 * pi;
    pc.point = [e](double t) { return Eigen::Vector3d(e.a * std::cos(t), e.b * std::sin(t), 0.0); };
    pc.dpoint = [e](double t) {
        return Eigen::Vector3d(-e.a * std::sin(t), e.b * std::cos(t), 0.0);
    };
    pc.speed = [e](double t) {
        double s = e.a * std::sin(t), c = e.b * std::cos(t);
        return std::sqrt(s * s + c * c);
    };
    pc.curvature = [e, pc](double t) {
        double sp = pc.speed(t);
        return e.a * e.b / (sp * sp * sp);
    };
    return pc;
}

ParamCurve make_support_fourier(const SupportFourierSpec& sf) {
    for (const auto& h : sf.h.harmonics)
        if (h.m < 2) throw ValidationError("support function harmonics must have m >= 2");
    TrigSeries h = sf.h;
    ParamCurve pc;
    pc.t_period = 2.0 * pi;
    pc.point = [h](double t) {
        double hv = h.eval(t), hp = h.deriv(t);
        double c = std::cos(t), s = std::sin(t);
        return Eigen::Vector3d(hv * c - hp * s, hv * s + hp * c, 0.0);
    };
    pc.dpoint = [h](double t) {
        double rho = h.eval(t) + h.deriv2(t);
        return Eigen::Vector3d(-rho * std::sin(t), rho * std::cos(t), 0.0);
    };
    pc.speed = [h](double t) { return h.eval(t) + h.deriv2(t); };
    pc.curvature = [h](double t) { return 1.0 / (h.eval(t) + h.deriv2(t)); };
    return pc;
}

ParamCurve make_geodesic_circle(SurfaceKind kind, const GeodesicCircleSpec& gc) {
    double r = gc.r;
    if (!(r > 0.0)) throw ValidationError("geodesic circle radius must be positive");
    if (kind == SurfaceKind::Sphere && !(r < pi / 2.0))
        throw ValidationError("spherical geodesic circle requires r < pi/2");
    ParamCurve pc;
    pc.t_period = 2.0 * pi;
    switch (kind) {
        case SurfaceKind::Flat:
            pc.point = [r](double t) {
                return Eigen::Vector3d(r * std::cos(t), r * std::sin(t), 0.0);
            };
            pc.dpoint = [r](double t) {
                return Eigen::Vector3d(-r * std::sin(t), r * std::cos(t), 0.0);
            };
            pc.speed = [r](double) { return r; };
            pc.curvature = [r](double) { return 1.0 / r; };
            break;
        case SurfaceKind::Sphere:
            pc.point = [r](double t) {
                return Eigen::Vector3d(std::sin(r) * std::cos(t), std::sin(r) * std::sin(t),
                                       std::cos(r));
            };
            pc.dpoint = [r](double t) {
                return Eigen::Vector3d(-std::sin(r) * std::sin(t), std::sin(r) * std::cos(t), 0.0);
            };
            pc.speed = [r](double) { return std::sin(r); };
            pc.curvature = [r](double) { return 1.0 / std::tan(r); };
            break;
        case SurfaceKind::Hyperbolic:
            pc.point = [r](double t) {
                return Eigen::Vector3d(std::sinh(r) * std::cos(t), std::sinh(r) * std::sin(t),
                                       std::cosh(r));
            };
            pc.dpoint = [r](double t) {
                return Eigen::Vector3d(-std::sinh(r) * std::sin(t), std::sinh(r) * std::cos(t),
                                       0.0);
            };
            pc.speed = [r](double) { return std::sinh(r); };
            pc.curvature = [r](double) { return 1.0 / std::tanh(r); };
            break;
    }
    return pc;
}

ParamCurve make_radial_graph(SurfaceKind kind, const RadialGraphSpec& rg) {
    if (kind == SurfaceKind::Flat)
        throw ValidationError("radial graph curves are defined on the sphere or hyperbolic plane");
    SurfacePoint c = rg.center;
    validate_point(kind, c);
    // Orthonormal tangent frame at the center.
    Eigen::Vector3d seed = std::abs(c.v.x()) < 0.9 ? Eigen::Vector3d::UnitX()
                                                   : Eigen::Vector3d::UnitY();
    Eigen::Vector3d e1 = project_dir(kind, c, seed).v;
    Eigen::Vector3d e2 = surface_normal(kind, c, TangentDir{e1});

    TrigSeries rho = rg.rho;
    ParamCurve pc;
    pc.t_period = 2.0 * pi;
    auto dir = [e1, e2](double t) -> Eigen::Vector3d {
        return std::cos(t) * e1 + std::sin(t) * e2;
    };
    auto ddir = [e1, e2](double t) -> Eigen::Vector3d {
        return -std::sin(t) * e1 + std::cos(t) * e2;
    };
    if (kind == SurfaceKind::Sphere) {
        pc.point = [c, dir, rho](double t) {
            double r = rho.eval(t);
            return Eigen::Vector3d(std::cos(r) * c.v + std::sin(r) * dir(t));
        };
        pc.dpoint = [c, dir, ddir, rho](double t) {
            double r = rho.eval(t), rp = rho.deriv(t);
            return Eigen::Vector3d(rp * (-std::sin(r) * c.v + std::cos(r) * dir(t)) +
                                   std::sin(r) * ddir(t));
        };
        pc.speed = [rho](double t) {
            double r = rho.eval(t), rp = rho.deriv(t);
            return std::sqrt(rp * rp + std::sin(r) * std::sin(r));
        };
    } else {
        pc.point = [c, dir, rho](double t) {
            double r = rho.eval(t);
            return Eigen::Vector3d(std::cosh(r) * c.v + std::sinh(r) * dir(t));
        };
        pc.dpoint = [c, dir, ddir, rho](double t) {
            double r = rho.eval(t), rp = rho.deriv(t);
            return Eigen::Vector3d(rp * (std::sinh(r) * c.v + std::cosh(r) * dir(t)) +
                                   std::sinh(r) * ddir(t));
        };
        pc.speed = [rho](double t) {
            double r = rho.eval(t), rp = rho.deriv(t);
            return std::sqrt(rp * rp + std::sinh(r) * std::sinh(r));
        };
    }
    // Curvature from finite differences of the tangent frame.
    ParamCurve forfd = pc;
    SurfaceKind k2 = kind;
    pc.curvature = [forfd, k2](double t) { return fd_curvature(forfd, k2, t, 1e-4); };
    return pc;
}

double enclosed_area(const CurveSpec& spec, int n_fine) {
    switch (spec.kind) {
        case SurfaceKind::Flat: {
            if (const auto* e = std::get_if<EllipseSpec>(&spec.shape)) return pi * e->a * e->b;
            if (const auto* sf = std::get_if<SupportFourierSpec>(&spec.shape)) {
                double acc = pi * sf->h.c0 * sf->h.c0;
                for (const auto& h : sf->h.harmonics)
                    acc += 0.5 * pi * (h.a * h.a + h.b * h.b) * (1.0 - double(h.m) * h.m);
                return acc;
            }
            const auto& gc = std::get<GeodesicCircleSpec>(spec.shape);
            return pi * gc.r * gc.r;
        }
        case SurfaceKind::Sphere: {
            if (const auto* gc = std::get_if<GeodesicCircleSpec>(&spec.shape))
                return 2.0 * pi * (1.0 - std::cos(gc->r));
            const auto& rg = std::get<RadialGraphSpec>(spec.shape);
            // Geodesic polar area element: dA = sin(r) dr dtheta.
            double acc = 0.0, h = 2.0 * pi / n_fine;
            for (int j = 0; j < n_fine; ++j) acc += 1.0 - std::cos(rg.rho.eval(j * h));
            return acc * h;
        }
        case SurfaceKind::Hyperbolic: {
            if (const auto* gc = std::get_if<GeodesicCircleSpec>(&spec.shape))
                return 2.0 * pi * (std::cosh(gc->r) - 1.0);
            const auto& rg = std::get<RadialGraphSpec>(spec.shape);
            double acc = 0.0, h = 2.0 * pi / n_fine;
            for (int j = 0; j < n_fine; ++j) acc += std::cosh(rg.rho.eval(j * h)) - 1.0;
            return acc * h;
        }
    }
    return 0.0;
}

SurfacePoint spec_interior_point(const CurveSpec& spec) {
    switch (spec.kind) {
        case SurfaceKind::Flat:
            return SurfacePoint::flat(0.0, 0.0);
        case SurfaceKind::Sphere:
        case SurfaceKind::Hyperbolic:
            if (const auto* rg = std::get_if<RadialGraphSpec>(&spec.shape)) return rg->center;
            return SurfacePoint{{0.0, 0.0, 1.0}};
    }
    return SurfacePoint{{0.0, 0.0, 1.0}};
}

}  // namespace

double TrigSeries::eval(double t) const {
    double v = c0;
    for (const auto& h : harmonics) v += h.a * std::cos(h.m * t) + h.b * std::sin(h.m * t);
    return v;
}

double TrigSeries::deriv(double t) const {
    double v = 0.0;
    for (const auto& h : harmonics)
        v += h.m * (-h.a * std::sin(h.m * t) + h.b * std::cos(h.m * t));
    return v;
}

double TrigSeries::deriv2(double t) const {
    double v = 0.0;
    for (const auto& h : harmonics)
        v -= double(h.m) * h.m * (h.a * std::cos(h.m * t) + h.b * std::sin(h.m * t));
    return v;
}

double SampledCurve::wrap(double s) const {
    double t = s - perimeter_ * std::floor(s / perimeter_);
    if (t >= perimeter_) t = 0.0;
    return t;
}

Eigen::Vector3d SampledCurve::position_raw(double s) const { return pos_spline_.eval(s); }

Eigen::Vector3d SampledCurve::tangent_raw(double s) const { return tan_spline_.eval(s); }

CurveFrame SampledCurve::frame_at(double s) const {
    double w = wrap(s);
    SurfacePoint p = project_point(kind_, pos_spline_.eval(w));
    TangentDir t = project_dir(kind_, p, tan_spline_.eval(w));
    return {p, t, k_spline_.eval_channel(0, w)};
}

double SampledCurve::curvature_at(double s) const { return k_spline_.eval_channel(0, wrap(s)); }

SampledCurve build_curve(const CurveSpec& spec, int n_samples) {
    if (n_samples < kMinSamples)
        throw ValidationError("build_curve requires n_samples >= 256");

    ParamCurve pc;
    switch (spec.kind) {
        case SurfaceKind::Flat:
            if (const auto* e = std::get_if<EllipseSpec>(&spec.shape)) {
                pc = make_ellipse(*e);
            } else if (const auto* sf = std::get_if<SupportFourierSpec>(&spec.shape)) {
                pc = make_support_fourier(*sf);
            } else if (const auto* gc = std::get_if<GeodesicCircleSpec>(&spec.shape)) {
                pc = make_geodesic_circle(spec.kind, *gc);
            } else {
                throw ValidationError("radial graph curves are not defined on the plane");
            }
            break;
        case SurfaceKind::Sphere:
        case SurfaceKind::Hyperbolic:
            if (const auto* gc = std::get_if<GeodesicCircleSpec>(&spec.shape)) {
                pc = make_geodesic_circle(spec.kind, *gc);
            } else if (const auto* rg = std::get_if<RadialGraphSpec>(&spec.shape)) {
                pc = make_radial_graph(spec.kind, *rg);
            } else {
                throw ValidationError("curve family not available on curved surfaces");
            }
            break;
    }

    const int n_fine = kFineFactor * n_samples;
    const double ht = pc.t_period / n_fine;

    // Support functions must stay positive for the origin to be interior.
    if (const auto* sf = std::get_if<SupportFourierSpec>(&spec.shape)) {
        for (int j = 0; j < n_fine; ++j) {
            if (!(sf->h.eval(j * ht) > 0.0)) {
                std::ostringstream os;
                os << "support function nonpositive at theta = " << j * ht;
                throw ValidationError(os.str());
            }
        }
    }

    // Convexity sweep on the oversampled grid.
    for (int j = 0; j < n_fine; ++j) {
        double t = j * ht;
        double k = pc.curvature(t);
        if (!(k > 0.0)) {
            std::ostringstream os;
            os << "curve is not strictly convex: k = " << k << " at parameter t = " << t;
            throw ValidationError(os.str());
        }
    }

    // Cumulative arclength at fine-grid nodes by per-cell Gauss quadrature.
    Eigen::ArrayXd s_fine(n_fine + 1);
    s_fine[0] = 0.0;
    for (int j = 0; j < n_fine; ++j)
        s_fine[j + 1] = s_fine[j] + gl5(pc.speed, j * ht, (j + 1) * ht);
    const double perim = s_fine[n_fine];

    // Invert s(t) at uniform arclength targets with Newton steps.
    const double hs = perim / n_samples;
    Eigen::ArrayXd t_at(n_samples);
    int seg = 0;
    for (int i = 0; i < n_samples; ++i) {
        double target = i * hs;
        while (seg + 1 < n_fine && s_fine[seg + 1] < target) ++seg;
        double frac = (target - s_fine[seg]) / std::max(s_fine[seg + 1] - s_fine[seg], 1e-300);
        double t = (seg + std::clamp(frac, 0.0, 1.0)) * ht;
        for (int it = 0; it < 4; ++it) {
            double resid = s_fine[seg] + gl5(pc.speed, seg * ht, t) - target;
            t -= resid / pc.speed(t);
        }
        t_at[i] = t;
    }

    SampledCurve c;
    c.kind_ = spec.kind;
    c.n_ = n_samples;
    c.perimeter_ = perim;
    c.interior_ = spec_interior_point(spec);
    c.s_grid_ = Eigen::ArrayXd::LinSpaced(n_samples, 0.0, perim * (n_samples - 1.0) / n_samples);
    c.points_.resize(3, n_samples);
    c.tangents_.resize(3, n_samples);
    c.k_samples_.resize(n_samples);

    for (int i = 0; i < n_samples; ++i) {
        double t = t_at[i];
        Eigen::Vector3d p = pc.point(t);
        Eigen::Vector3d dp = pc.dpoint(t);
        double sp = std::sqrt(std::abs(metric_dot(spec.kind, dp, dp)));
        c.points_.col(i) = p;
        c.tangents_.col(i) = dp / sp;
        c.k_samples_[i] = pc.curvature(t);
    }

    // Enforce the orientation contract: surface_normal(p, T) points inward.
    {
        SurfacePoint p{c.points_.col(0)};
        TangentDir tdir{c.tangents_.col(0)};
        Eigen::Vector3d nin = surface_normal(spec.kind, p, tdir);
        Eigen::Vector3d toward = direction_towards(spec.kind, p, c.interior_).v;
        if (metric_dot(spec.kind, nin, toward) < 0.0) {
            c.points_.rightCols(n_samples - 1) = c.points_.rightCols(n_samples - 1).rowwise().reverse().eval();
            c.tangents_ = (-c.tangents_).eval();
            c.tangents_.rightCols(n_samples - 1) =
                c.tangents_.rightCols(n_samples - 1).rowwise().reverse().eval();
            Eigen::ArrayXd krev = c.k_samples_;
            for (int i = 1; i < n_samples; ++i) c.k_samples_[i] = krev[n_samples - i];
        }
    }

    c.k_min_ = c.k_samples_.minCoeff();
    c.k_max_ = c.k_samples_.maxCoeff();
    c.area_ = enclosed_area(spec, n_fine);

    if (spec.kind == SurfaceKind::Sphere && !(c.area_ < 2.0 * pi))
        throw ValidationError("spherical curve area must be below 2*pi");

    // Gauss-Bonnet residual from the uniform-grid curvature integral.
    double total_k = c.k_samples_.mean() * perim;
    c.gb_residual_ = total_k - (2.0 * pi - curvature_sign(spec.kind) * c.area_);
    if (std::abs(c.gb_residual_) > kGaussBonnetTol) {
        std::ostringstream os;
        os << "curve build failed the Gauss-Bonnet consistency check: residual = "
           << c.gb_residual_;
        throw ValidationError(os.str());
    }

    // Hemisphere containment for spherical curves.
    if (spec.kind == SurfaceKind::Sphere) {
        double max_dist = 0.0;
        for (int j = 0; j < n_fine; ++j) {
            SurfacePoint p{pc.point(j * ht)};
            max_dist = std::max(max_dist, geodesic_distance(spec.kind, c.interior_, p));
        }
        c.hemisphere_contained_ = max_dist < pi / 2.0 - kHemisphereMargin;
        if (const auto* rg = std::get_if<RadialGraphSpec>(&spec.shape)) {
            (void)rg;
            if (!c.hemisphere_contained_)
                throw ValidationError(
                    "spherical radial graph must lie strictly inside an open hemisphere");
        }
    } else {
        c.hemisphere_contained_ = false;
    }

    c.pos_spline_ = PeriodicSpline(c.points_, perim);
    c.tan_spline_ = PeriodicSpline(c.tangents_, perim);
    Eigen::MatrixXd krow(1, n_samples);
    krow.row(0) = c.k_samples_.transpose();
    c.k_spline_ = PeriodicSpline(krow, perim);
    return c;
}

CurveInvariants curve_invariants(const SampledCurve& c) {
    double total_k = c.curvature_samples().mean() * c.perimeter();
    double area_indep = 0.0;
    switch (c.kind()) {
        case SurfaceKind::Flat: {
            // Green's theorem with the stored tangents: A = 1/2 int (x y' - y x') ds.
            const auto& p = c.points();
            const auto& t = c.tangents();
            double acc = 0.0;
            for (int i = 0; i < c.n_samples(); ++i)
                acc += p(0, i) * t(1, i) - p(1, i) * t(0, i);
            area_indep = 0.5 * acc * c.perimeter() / c.n_samples();
            break;
        }
        case SurfaceKind::Sphere:
            area_indep = 2.0 * std::numbers::pi - total_k;
            break;
        case SurfaceKind::Hyperbolic:
            area_indep = total_k - 2.0 * std::numbers::pi;
            break;
    }
    return {c.perimeter(), c.area(), c.k_min(),
            total_k - (2.0 * std::numbers::pi - curvature_sign(c.kind()) * c.area()), area_indep};
}

}  // namespace hopf
