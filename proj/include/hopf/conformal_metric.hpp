#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "hopf/errors.hpp"

namespace hopf {

/// Conformal factor f on T^n = R^n / diag(periods): a real trigonometric
/// polynomial c0 + sum_j [a_j cos(2 pi k_j . x / periods) + b_j sin(...)],
/// required to stay positive with margin. Derivatives are exact term-by-term.
struct TrigPoly {
    struct Term {
        Eigen::VectorXi freq;  // integer frequency vector, not all zero
        double a = 0.0;
        double b = 0.0;
    };

    int n = 2;
    Eigen::VectorXd periods;  // per-axis period lengths, default 1
    double c0 = 1.0;
    std::vector<Term> terms;

    static TrigPoly constant(int n, double value);

    void validate_shape() const;
    /// Angular frequency vector 2 pi k / periods of one term.
    Eigen::VectorXd omega(const Term& t) const;

    double eval(const Eigen::VectorXd& x) const;

    struct Jet {
        double f;
        Eigen::VectorXd grad;
        Eigen::MatrixXd hess;
        double lap;
    };
    Jet eval_jet(const Eigen::VectorXd& x) const;

    /// Fast two-dimensional jet for the geodesic integrator (n == 2 only).
    struct Jet2 {
        double f, fx, fy, fxx, fxy, fyy;
    };
    Jet2 eval_jet2(double x, double y) const;
};

/// Positivity margin required of conformal factors on the oversampled grid.
inline constexpr double kPositivityMargin = 1e-6;

/// f and its exact derivatives sampled on the uniform m^n grid
/// (row-major, last axis fastest; x_d = i_d * period_d / m).
struct MetricField {
    TrigPoly poly;
    int m = 0;
    long n_points = 0;
    Eigen::ArrayXd f;          // m^n
    Eigen::MatrixXd grad;      // n x m^n
    Eigen::MatrixXd hess;      // n(n+1)/2 x m^n, packed upper triangle
    Eigen::ArrayXd laplacian;  // m^n

    int dim() const { return poly.n; }
    double cell_volume() const;
    double domain_volume() const;
    Eigen::VectorXd point_at(long idx) const;
    static int pack_index(int n, int i, int j);
};

MetricField eval_field(const TrigPoly& p, int m);

/// Curvature data of g = f g0. For n = 2 the Gaussian curvature grid K; for
/// n >= 3 the coordinate Ricci tensor (packed symmetric) and scalar curvature.
/// curv_sup is ||K||_C0 (n = 2) or the sup over g-unit vectors v of |Ric(v,v)|
/// (n > 2), i.e. max over the grid of spectral_radius(Ric)/f.
struct CurvatureField {
    int n = 2;
    Eigen::ArrayXd K;      // n == 2
    Eigen::MatrixXd ric;   // packed, n >= 3
    Eigen::ArrayXd scal;   // n >= 3
    double curv_sup = 0.0;
    double vol_g = 0.0;  // integral of f^{n/2} over the fundamental domain
};

/// K = -Laplacian(log f) / (2 f), expanded analytically through the stored
/// derivative grids. n = 2 only.
CurvatureField gauss_curvature(const MetricField& field);

/// Conformal Ricci tensor and scalar curvature for n >= 3. Two independent
/// formulas (tensor trace vs the direct scalar expression) are checked
/// against each other at every grid point.
CurvatureField ricci_and_scalar(const MetricField& field);

CurvatureField curvature_of(const MetricField& field);  // dispatch on n

struct FieldNorms {
    double curv_sup;
    double psi_sup;
    double vol_g;
};

/// Sup norms and Riemannian volume entering the bound denominators; psi is
/// evaluated on the range of f over the grid.
FieldNorms field_norms(const MetricField& field, const CurvatureField& curv,
                       const std::function<double(double)>& psi);

/// Pointwise curvature evaluation (no grid); valid for any n >= 2.
double gauss_curvature_at(const TrigPoly& p, double x, double y);
struct PointCurvature {
    Eigen::MatrixXd ric;
    double scal_direct;      // closed-form scalar curvature
    double scal_from_trace;  // trace(Ric) / f
};
PointCurvature ricci_scalar_at(const TrigPoly& p, const Eigen::VectorXd& x);

}  // namespace hopf
