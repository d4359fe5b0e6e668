#pragma once

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hopf/errors.hpp"

namespace hopf {

struct OdeOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    double h_init = 1e-3;
    double h_max = 1.0;
    long max_steps = 100000000L;
};

/// Continuous extension of one accepted Dormand-Prince step on [t0, t1].
template <class Vec>
struct DenseStep {
    double t0, t1;
    Vec r1, r2, r3, r4, r5;

    double length() const { return t1 - t0; }

    Vec eval(double t) const {
        double th = (t - t0) / (t1 - t0);
        double th1 = 1.0 - th;
        return r1 + th * (r2 + th1 * (r3 + th * (r4 + th1 * r5)));
    }

    double eval_component(int i, double t) const {
        double th = (t - t0) / (t1 - t0);
        double th1 = 1.0 - th;
        return r1[i] + th * (r2[i] + th1 * (r3[i] + th * (r4[i] + th1 * r5[i])));
    }
};

/// Adaptive Dormand-Prince 5(4) from t0 to t1 > t0.
/// rhs(t, y, dydt); observer(const DenseStep<Vec>&) -> bool, returning false
/// stops the integration early. Returns the final state.
template <class Vec, class Rhs, class Observer>
Vec integrate_dopri5(Rhs&& rhs, double t0, const Vec& y0, double t1, const OdeOptions& opts,
                     Observer&& observer) {
    // Butcher tableau.
    constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    constexpr double a21 = 1.0 / 5;
    constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                     a54 = -212.0 / 729;
    constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                     a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                     b6 = 11.0 / 84;
    constexpr double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                     e4 = 125.0 / 192 - 393.0 / 640, e5 = -2187.0 / 6784 + 92097.0 / 339200,
                     e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;
    constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                     d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                     d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

    Vec y = y0;
    Vec k1, k2, k3, k4, k5, k6, k7, ytmp, ynew, yerr;
    double t = t0;
    rhs(t, y, k1);
    double h = std::min({opts.h_init, opts.h_max, t1 - t0});

    for (long step = 0; step < opts.max_steps && t < t1; ++step) {
        h = std::min(h, t1 - t);
        if (!(h > 1e-14 * std::max(1.0, std::abs(t)))) {
            std::ostringstream os;
            os << "ODE step size underflow at t = " << t;
            throw InternalConsistencyError(os.str());
        }

        ytmp = y + h * a21 * k1;
        rhs(t + c2 * h, ytmp, k2);
        ytmp = y + h * (a31 * k1 + a32 * k2);
        rhs(t + c3 * h, ytmp, k3);
        ytmp = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
        rhs(t + c4 * h, ytmp, k4);
        ytmp = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
        rhs(t + c5 * h, ytmp, k5);
        ytmp = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
        rhs(t + h, ytmp, k6);
        ynew = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        rhs(t + h, ynew, k7);
        yerr = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

        double err = 0.0;
        for (int i = 0; i < y.size(); ++i) {
            double sc = opts.abs_tol +
                        opts.rel_tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
            double q = yerr[i] / sc;
            err += q * q;
        }
        err = std::sqrt(err / y.size());

        if (err <= 1.0) {
            DenseStep<Vec> dense;
            dense.t0 = t;
            dense.t1 = t + h;
            dense.r1 = y;
            dense.r2 = ynew - y;
            dense.r3 = h * k1 - dense.r2;
            dense.r4 = dense.r2 - h * k7 - dense.r3;
            dense.r5 = h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);
            t += h;
            y = ynew;
            k1 = k7;  // FSAL
            if (!observer(dense)) return y;
            double fac = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
            h = std::min(h * std::clamp(fac, 0.2, 5.0), opts.h_max);
        } else {
            double fac = 0.9 * std::pow(err, -0.2);
            h *= std::clamp(fac, 0.2, 1.0);
        }
    }
    if (t < t1) throw InternalConsistencyError("ODE integration exceeded the step budget");
    return y;
}

template <class Vec, class Rhs>
Vec integrate_dopri5(Rhs&& rhs, double t0, const Vec& y0, double t1, const OdeOptions& opts) {
    return integrate_dopri5<Vec>(std::forward<Rhs>(rhs), t0, y0, t1, opts,
                                 [](const DenseStep<Vec>&) { return true; });
}

}  // namespace hopf
