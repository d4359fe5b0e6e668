#pragma once

#include <Eigen/Dense>

namespace hopf {

/// Multi-channel C^2 periodic cubic spline on a uniform grid over [0, period).
/// Channel values are stored as rows; evaluation is vectorized over channels.
class PeriodicSpline {
public:
    PeriodicSpline() = default;

    /// values: channels x n, sampled at s_i = i * period / n.
    PeriodicSpline(const Eigen::MatrixXd& values, double period);

    int channels() const { return static_cast<int>(values_.rows()); }
    int samples() const { return static_cast<int>(values_.cols()); }
    double period() const { return period_; }

    /// Evaluate all channels at s (reduced mod period).
    Eigen::VectorXd eval(double s) const;

    /// Evaluate d/ds of all channels at s.
    Eigen::VectorXd eval_derivative(double s) const;

    /// Single-channel fast path.
    double eval_channel(int channel, double s) const;
    double eval_channel_derivative(int channel, double s) const;

private:
    double local(double s, int& i0, int& i1) const;

    double period_ = 0.0;
    double h_ = 0.0;
    Eigen::MatrixXd values_;  // channels x n
    Eigen::MatrixXd second_;  // channels x n, spline second derivatives
};

}  // namespace hopf
