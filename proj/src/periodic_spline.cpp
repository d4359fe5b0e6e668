#include "hopf/periodic_spline.hpp"

#include <cmath>

#include "hopf/errors.hpp"

namespace hopf {

namespace {

// Cyclic (1, 4, 1) system via Sherman-Morrison on the corner entries.
void solve_cyclic141(Eigen::VectorXd& rhs) {
    const int n = static_cast<int>(rhs.size());
    if (n < 3) throw ValidationError("periodic spline needs at least 3 samples");
    // A = T + u v^T with u = (-4, 0, ..., 0, 1)^T-style corner correction.
    const double gamma = -4.0;
    Eigen::VectorXd u = Eigen::VectorXd::Zero(n);
    u[0] = gamma;
    u[n - 1] = 1.0;
    // Modified diagonal: first entry 4 - gamma, last 4 - 1/gamma.
    Eigen::VectorXd diag = Eigen::VectorXd::Constant(n, 4.0);
    diag[0] -= gamma;
    diag[n - 1] -= 1.0 / gamma;

    auto tri_solve = [&](Eigen::VectorXd& x) {
        Eigen::VectorXd d = diag;
        for (int i = 1; i < n; ++i) {
            double w = 1.0 / d[i - 1];
            d[i] -= w;
            x[i] -= w * x[i - 1];
        }
        x[n - 1] /= d[n - 1];
        for (int i = n - 2; i >= 0; --i) x[i] = (x[i] - x[i + 1]) / d[i];
    };

    Eigen::VectorXd z = u;
    tri_solve(rhs);
    tri_solve(z);
    // v = (1, 0, ..., 0, 1/gamma)
    double vy = rhs[0] + rhs[n - 1] / gamma;
    double vz = z[0] + z[n - 1] / gamma;
    rhs -= (vy / (1.0 + vz)) * z;
}

}  // namespace

PeriodicSpline::PeriodicSpline(const Eigen::MatrixXd& values, double period)
    : period_(period), values_(values) {
    const int n = static_cast<int>(values.cols());
    if (n < 3) throw ValidationError("periodic spline needs at least 3 samples");
    if (!(period > 0.0)) throw ValidationError("periodic spline period must be positive");
    h_ = period_ / n;

    second_.resize(values.rows(), n);
    const double scale = 6.0 / (h_ * h_);
    Eigen::VectorXd rhs(n);
    for (int ch = 0; ch < values.rows(); ++ch) {
        for (int i = 0; i < n; ++i) {
            int im = (i + n - 1) % n, ip = (i + 1) % n;
            rhs[i] = scale * (values(ch, im) - 2.0 * values(ch, i) + values(ch, ip));
        }
        solve_cyclic141(rhs);
        second_.row(ch) = rhs.transpose();
    }
}

double PeriodicSpline::local(double s, int& i0, int& i1) const {
    const int n = samples();
    double t = s - period_ * std::floor(s / period_);
    if (t >= period_) t = 0.0;
    double x = t / h_;
    int i = static_cast<int>(x);
    if (i >= n) i = n - 1;
    i0 = i;
    i1 = (i + 1) % n;
    return x - i;  // in [0, 1)
}

Eigen::VectorXd PeriodicSpline::eval(double s) const {
    int i0, i1;
    double u = local(s, i0, i1);
    double um = 1.0 - u;
    double h2 = h_ * h_ / 6.0;
    double c0 = um, c1 = u;
    double d0 = h2 * (um * um * um - um);
    double d1 = h2 * (u * u * u - u);
    return c0 * values_.col(i0) + c1 * values_.col(i1) + d0 * second_.col(i0) +
           d1 * second_.col(i1);
}

Eigen::VectorXd PeriodicSpline::eval_derivative(double s) const {
    int i0, i1;
    double u = local(s, i0, i1);
    double um = 1.0 - u;
    double c = 1.0 / h_;
    double d0 = h_ / 6.0 * (1.0 - 3.0 * um * um);
    double d1 = h_ / 6.0 * (3.0 * u * u - 1.0);
    return c * (values_.col(i1) - values_.col(i0)) + d0 * second_.col(i0) +
           d1 * second_.col(i1);
}

double PeriodicSpline::eval_channel(int channel, double s) const {
    int i0, i1;
    double u = local(s, i0, i1);
    double um = 1.0 - u;
    double h2 = h_ * h_ / 6.0;
    return um * values_(channel, i0) + u * values_(channel, i1) +
           h2 * ((um * um * um - um) * second_(channel, i0) +
                 (u * u * u - u) * second_(channel, i1));
}

double PeriodicSpline::eval_channel_derivative(int channel, double s) const {
    int i0, i1;
    double u = local(s, i0, i1);
    double um = 1.0 - u;
    return (values_(channel, i1) - values_(channel, i0)) / h_ +
           h_ / 6.0 * ((1.0 - 3.0 * um * um) * second_(channel, i0) +
                       (3.0 * u * u - 1.0) * second_(channel, i1));
}

}  // namespace hopf
