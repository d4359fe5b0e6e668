#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "hopf/billiard.hpp"  // DeltaEstimate
#include "hopf/conformal_metric.hpp"
#include "hopf/rk45.hpp"

namespace hopf {

/// State of the unit-speed geodesic flow of g = f g0 on T^2, in arclength
/// parametrization, carrying one scalar Jacobi solution.
struct GeodesicState {
    Eigen::Vector2d x;  // position, wrapped mod periods
    double phi;         // direction angle
    double t;           // arclength
    double j;
    double jp;
};

struct ConjugateReport {
    bool found = false;
    std::optional<std::pair<double, double>> first_pair;
    std::vector<double> zeros;  // Jacobi zero times in (-T, T], increasing
};

using Vec5 = Eigen::Matrix<double, 5, 1>;  // (x1, x2, phi, J, J')

/// Dense trajectory of one geodesic: accepted integration steps with their
/// continuous extensions.
class GeodesicTrajectory {
public:
    double t_begin() const { return steps_.empty() ? 0.0 : steps_.front().t0; }
    double t_end() const { return steps_.empty() ? 0.0 : steps_.back().t1; }
    Vec5 eval(double t) const;
    const std::vector<DenseStep<Vec5>>& steps() const { return steps_; }
    std::vector<DenseStep<Vec5>>& steps() { return steps_; }

private:
    std::vector<DenseStep<Vec5>> steps_;
};

/// Unit-speed geodesic equations plus the scalar Jacobi equation
/// J'' + K(t) J = 0; right-hand side suitable for the Dormand-Prince driver.
void geodesic_rhs(const TrigPoly& metric, double t, const Vec5& y, Vec5& dydt);

/// Integrate the geodesic from (x0, phi0) over [0, T] with Jacobi seed
/// (j0, jp0); returns states at the accepted step endpoints.
std::vector<GeodesicState> integrate_geodesic(const TrigPoly& metric, const Eigen::Vector2d& x0,
                                              double phi0, double T, double tol = 1e-10,
                                              double j0 = 0.0, double jp0 = 1.0);

/// Dense-output version used by the conjugate-point and Riccati machinery;
/// integrates over [0, T] and keeps every step.
GeodesicTrajectory integrate_geodesic_dense(const TrigPoly& metric, const Eigen::Vector2d& x0,
                                            double phi0, double T, double tol = 1e-10,
                                            double j0 = 0.0, double jp0 = 1.0);

/// Window test: propagate the Jacobi solution seeded J(-T) = 0, J'(-T) = 1
/// along the geodesic through (x0, phi0) and count its zeros in (-T, T];
/// two or more certify a conjugate pair inside the window.
ConjugateReport has_conjugate_points(const TrigPoly& metric, const Eigen::Vector2d& x0,
                                     double phi0, double T, double tol = 1e-8);

/// Monte Carlo estimate of the non-minimal Liouville fraction: positions
/// sampled with density proportional to f, directions uniform.
DeltaEstimate estimate_delta_geodesic(const TrigPoly& metric, double T, long samples,
                                      std::uint64_t seed, int workers = 1, double tol = 1e-8);

struct RiccatiCheck {
    double max_residual = 0.0;         // |w' + w^2 + K| / (1 + w^2 + |K|)
    double max_blowup_mismatch = 0.0;  // |predicted blowup - Jacobi zero|
    int zeros_checked = 0;
};

/// Cross-validates the Jacobi route against the Riccati equation along the
/// +-T window geodesic: finite-difference residual of w = J'/J away from
/// zeros, and independent Riccati integrations whose blowup times must land
/// on the Jacobi zeros.
RiccatiCheck riccati_crosscheck(const TrigPoly& metric, const Eigen::Vector2d& x0, double phi0,
                                double T, double tol = 1e-10);

/// Max |f(x) |xdot|^2 - 1| over a uniform time sampling of the trajectory.
double energy_defect(const TrigPoly& metric, const GeodesicTrajectory& traj, int probes = 2048);

}  // namespace hopf
