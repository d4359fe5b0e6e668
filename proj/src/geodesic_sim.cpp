#include "hopf/geodesic_sim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace hopf {

namespace {

using std::numbers::pi;

double wrap_period(double x, double p) {
    double t = x - p * std::floor(x / p);
    return t >= p ? 0.0 : t;
}

Eigen::Vector2d wrap_point(const TrigPoly& metric, const Eigen::Vector2d& x) {
    return {wrap_period(x[0], metric.periods[0]), wrap_period(x[1], metric.periods[1])};
}

// Rigorous upper bound for f: c0 plus the coefficient mass.
double factor_upper_bound(const TrigPoly& p) {
    double b = p.c0;
    for (const auto& t : p.terms) b += std::abs(t.a) + std::abs(t.b);
    return b;
}

OdeOptions make_options(double tol) {
    OdeOptions o;
    o.abs_tol = tol;
    o.rel_tol = tol;
    o.h_init = 1e-3;
    o.h_max = 0.25;
    return o;
}

// Refine a sign change of component `comp` inside one dense step.
double refine_zero(const DenseStep<Vec5>& step, int comp) {
    double lo = step.t0, hi = step.t1;
    double flo = step.eval_component(comp, lo);
    for (int it = 0; it < 80; ++it) {
        double mid = 0.5 * (lo + hi);
        double fm = step.eval_component(comp, mid);
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
        if (hi - lo < 1e-13 * std::max(1.0, std::abs(hi))) break;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

void geodesic_rhs(const TrigPoly& metric, double /*t*/, const Vec5& y, Vec5& dydt) {
    TrigPoly::Jet2 jet = metric.eval_jet2(y[0], y[1]);
    const double f = jet.f;
    const double rf = std::sqrt(f);
    const double c = std::cos(y[2]), s = std::sin(y[2]);
    dydt[0] = c / rf;
    dydt[1] = s / rf;
    dydt[2] = (jet.fy * c - jet.fx * s) / (2.0 * f * rf);
    const double lap = jet.fxx + jet.fyy;
    const double g2 = jet.fx * jet.fx + jet.fy * jet.fy;
    const double K = -(lap * f - g2) / (2.0 * f * f * f);
    dydt[3] = y[4];
    dydt[4] = -K * y[3];
}

Vec5 GeodesicTrajectory::eval(double t) const {
    if (steps_.empty()) throw ValidationError("empty trajectory");
    auto it = std::lower_bound(steps_.begin(), steps_.end(), t,
                               [](const DenseStep<Vec5>& s, double v) { return s.t1 < v; });
    if (it == steps_.end()) it = std::prev(steps_.end());
    return it->eval(std::clamp(t, it->t0, it->t1));
}

std::vector<GeodesicState> integrate_geodesic(const TrigPoly& metric, const Eigen::Vector2d& x0,
                                              double phi0, double T, double tol, double j0,
                                              double jp0) {
    if (!(T > 0.0)) throw ValidationError("integration horizon must be positive");
    metric.validate_shape();
    if (metric.n != 2) throw ValidationError("geodesic simulation is two-dimensional");

    std::vector<GeodesicState> out;
    Vec5 y;
    y << x0[0], x0[1], phi0, j0, jp0;
    out.push_back({wrap_point(metric, x0), phi0, 0.0, j0, jp0});
    auto rhs = [&metric](double t, const Vec5& yy, Vec5& dy) { geodesic_rhs(metric, t, yy, dy); };
    integrate_dopri5<Vec5>(rhs, 0.0, y, T, make_options(tol), [&](const DenseStep<Vec5>& st) {
        Vec5 v = st.eval(st.t1);
        out.push_back({wrap_point(metric, {v[0], v[1]}), v[2], st.t1, v[3], v[4]});
        return true;
    });
    return out;
}

GeodesicTrajectory integrate_geodesic_dense(const TrigPoly& metric, const Eigen::Vector2d& x0,
                                            double phi0, double T, double tol, double j0,
                                            double jp0) {
    if (!(T > 0.0)) throw ValidationError("integration horizon must be positive");
    GeodesicTrajectory traj;
    Vec5 y;
    y << x0[0], x0[1], phi0, j0, jp0;
    auto rhs = [&metric](double t, const Vec5& yy, Vec5& dy) { geodesic_rhs(metric, t, yy, dy); };
    integrate_dopri5<Vec5>(rhs, 0.0, y, T, make_options(tol), [&](const DenseStep<Vec5>& st) {
        traj.steps().push_back(st);
        return true;
    });
    return traj;
}

namespace {

// Backward leg: end state of the reversed geodesic gives the -T launch state.
Vec5 window_start(const TrigPoly& metric, const Eigen::Vector2d& x0, double phi0, double T,
                  double tol) {
    Vec5 y;
    y << x0[0], x0[1], phi0 + pi, 0.0, 0.0;
    auto rhs = [&metric](double t, const Vec5& yy, Vec5& dy) { geodesic_rhs(metric, t, yy, dy); };
    Vec5 end = integrate_dopri5<Vec5>(rhs, 0.0, y, T, make_options(tol));
    Vec5 start;
    start << end[0], end[1], end[2] + pi, 0.0, 1.0;
    return start;
}

}  // namespace

ConjugateReport has_conjugate_points(const TrigPoly& metric, const Eigen::Vector2d& x0,
                                     double phi0, double T, double tol) {
    if (!(T > 0.0)) throw ValidationError("window horizon must be positive");
    Vec5 start = window_start(metric, x0, phi0, T, tol);

    ConjugateReport report;
    auto rhs = [&metric](double t, const Vec5& yy, Vec5& dy) { geodesic_rhs(metric, t, yy, dy); };
    integrate_dopri5<Vec5>(rhs, 0.0, start, 2.0 * T, make_options(tol),
                           [&](const DenseStep<Vec5>& st) {
                               double a = st.eval_component(3, st.t0);
                               double b = st.eval_component(3, st.t1);
                               if (a * b < 0.0) report.zeros.push_back(refine_zero(st, 3) - T);
                               return true;
                           });
    report.found = report.zeros.size() >= 2;
    if (report.found) report.first_pair = std::make_pair(report.zeros[0], report.zeros[1]);
    return report;
}

DeltaEstimate estimate_delta_geodesic(const TrigPoly& metric, double T, long samples,
                                      std::uint64_t seed, int workers, double tol) {
    if (samples < 1) throw ValidationError("estimate_delta_geodesic needs samples >= 1");
    if (!(T > 0.0)) throw ValidationError("estimate_delta_geodesic needs T > 0");
    metric.validate_shape();
    if (metric.n != 2) throw ValidationError("geodesic delta estimation is two-dimensional");

    const double fbound = factor_upper_bound(metric);
    std::vector<std::uint8_t> flagged(samples, 0);
    parallel_for(samples, workers, [&](long i) {
        SeededStream st{seed, static_cast<std::uint64_t>(i), 0};
        Eigen::Vector2d x;
        // Rejection sampling of positions with density proportional to f.
        for (;;) {
            double u1 = st.next_unit(), u2 = st.next_unit(), u3 = st.next_unit();
            x << u1 * metric.periods[0], u2 * metric.periods[1];
            if (u3 * fbound <= metric.eval(x)) break;
        }
        double phi = 2.0 * pi * st.next_unit();
        flagged[i] = has_conjugate_points(metric, x, phi, T, tol).found ? 1 : 0;
    });
    long hits = std::accumulate(flagged.begin(), flagged.end(), 0L);
    ConfidenceInterval ci = confidence_interval(hits, samples);
    return {ci.delta_hat, ci.stderr_, T, samples, seed};
}

RiccatiCheck riccati_crosscheck(const TrigPoly& metric, const Eigen::Vector2d& x0, double phi0,
                                double T, double tol) {
    Vec5 start = window_start(metric, x0, phi0, T, tol);
    GeodesicTrajectory traj;
    std::vector<double> zeros;
    auto rhs = [&metric](double t, const Vec5& yy, Vec5& dy) { geodesic_rhs(metric, t, yy, dy); };
    integrate_dopri5<Vec5>(rhs, 0.0, start, 2.0 * T, make_options(tol),
                           [&](const DenseStep<Vec5>& st) {
                               traj.steps().push_back(st);
                               double a = st.eval_component(3, st.t0);
                               double b = st.eval_component(3, st.t1);
                               if (a * b < 0.0) zeros.push_back(refine_zero(st, 3));
                               return true;
                           });

    RiccatiCheck check;
    auto curvature_at_time = [&](double t) {
        Vec5 v = traj.eval(t);
        return gauss_curvature_at(metric, v[0], v[1]);
    };
    auto omega_at = [&](double t) {
        Vec5 v = traj.eval(t);
        return v[4] / v[3];
    };

    // Residual of the Riccati identity via finite differences of the dense
    // output, away from the Jacobi zeros.
    const int probes = 2000;
    const double dt = 1e-5;
    for (int i = 1; i < probes; ++i) {
        double t = 2.0 * T * i / probes;
        if (t < 2.0 * dt || t > 2.0 * T - 2.0 * dt) continue;
        Vec5 v = traj.eval(t);
        if (std::abs(v[3]) < 1e-3 * (std::abs(v[4]) + 1.0)) continue;  // near a zero
        double w = v[4] / v[3];
        if (std::abs(w) > 5.0) continue;
        double wdot = (omega_at(t + dt) - omega_at(t - dt)) / (2.0 * dt);
        double K = curvature_at_time(t);
        double resid = std::abs(wdot + w * w + K) / (1.0 + w * w + std::abs(K));
        check.max_residual = std::max(check.max_residual, resid);
    }

    // Independent Riccati integrations: launch between zeros and require the
    // blowup to land on the next Jacobi zero.
    using Vec1 = Eigen::Matrix<double, 1, 1>;
    for (std::size_t k = 0; k < zeros.size(); ++k) {
        double t_prev = (k == 0) ? 0.0 : zeros[k - 1];
        double t_start = 0.5 * (t_prev + zeros[k]);
        if (zeros[k] - t_start < 1e-4) continue;
        Vec5 v = traj.eval(t_start);
        if (std::abs(v[3]) < 1e-12) continue;
        Vec1 w0;
        w0 << v[4] / v[3];
        double blowup = std::numeric_limits<double>::quiet_NaN();
        auto riccati = [&](double t, const Vec1& w, Vec1& dw) {
            dw[0] = -w[0] * w[0] - curvature_at_time(t);
        };
        OdeOptions ro = make_options(tol);
        ro.h_max = 0.05;
        try {
            integrate_dopri5<Vec1>(riccati, t_start, w0, zeros[k] + 0.5, ro,
                                   [&](const DenseStep<Vec1>& st) {
                                       double w = st.eval_component(0, st.t1);
                                       if (w < -1e8) {
                                           blowup = st.t1 - 1.0 / w;
                                           return false;
                                       }
                                       return true;
                                   });
        } catch (const InternalConsistencyError&) {
            // Step-size underflow right at the pole also pins the blowup time.
        }
        if (std::isfinite(blowup)) {
            check.max_blowup_mismatch =
                std::max(check.max_blowup_mismatch, std::abs(blowup - zeros[k]));
            ++check.zeros_checked;
        }
    }
    return check;
}

double energy_defect(const TrigPoly& metric, const GeodesicTrajectory& traj, int probes) {
    double worst = 0.0;
    double t0 = traj.t_begin(), t1 = traj.t_end();
    for (int i = 0; i <= probes; ++i) {
        double t = t0 + (t1 - t0) * i / probes;
        Vec5 y = traj.eval(t);
        Vec5 dy;
        geodesic_rhs(metric, t, y, dy);
        double speed2 = dy[0] * dy[0] + dy[1] * dy[1];
        double f = metric.eval_jet2(y[0], y[1]).f;
        worst = std::max(worst, std::abs(f * speed2 - 1.0));
    }
    return worst;
}

}  // namespace hopf
