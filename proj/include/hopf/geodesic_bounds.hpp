#pragma once

#include <functional>
#include <string>
#include <vector>

#include "hopf/conformal_metric.hpp"

namespace hopf {

/// Weight function psi entering the torus bound. Power means psi(f) = f^alpha;
/// Custom supplies psi and psi' as callables, checked numerically for
/// positivity on the observed range of f.
struct PsiSpec {
    enum class Kind { Power, Custom };
    Kind kind = Kind::Power;
    double alpha = 2.0;
    std::function<double(double)> psi;
    std::function<double(double)> dpsi;

    static PsiSpec power(double alpha);
    static PsiSpec custom(std::function<double(double)> psi, std::function<double(double)> dpsi);

    double eval(double f) const;
    double deriv(double f) const;
    std::string describe() const;
};

/// Admissible Power ranges: n = 2 needs 0 < alpha < 4; n > 2 needs
/// (n-2) + alpha(4-alpha) > 0.
bool power_alpha_admissible(int n, double alpha);

/// Default "meaningful" alpha range for the scan: (0, 2] for n = 2,
/// [0, 2] for n >= 3.
bool power_alpha_meaningful(int n, double alpha);

/// The combined weight entering the numerator integrand:
///   n = 2:  psi'(f) (4/f - psi'(f)/psi(f))
///   n > 2:  f^{n/2-1} psi'(f)(4/f - psi'(f)/psi(f)) + (n-2) f^{n/2-3} psi(f)
double capital_psi(int n, const PsiSpec& psi, double f_value);

/// Closed-form specialization for psi = f^alpha:
///   n = 2:  alpha(4-alpha) f^{alpha-2}
///   n > 2:  ((n-2) + alpha(4-alpha)) f^{n/2-3+alpha}
double capital_psi_power_closed_form(int n, double alpha, double f_value);

/// Volume of the unit sphere S^{n-1}: 2 pi^{n/2} / Gamma(n/2).
double unit_sphere_volume(int n_minus_1);

struct GeodesicBoundReport {
    int n;
    std::string psi_descriptor;
    double psi_integral;  // int Psi(f) |grad f|^2 dx over the fundamental domain
    double curv_sup;
    double psi_sup;
    double vol_g;
    double delta_lb;
    bool exceeds_one = false;  // reported, never clamped from above
};

/// Lower bound on the non-minimal Liouville fraction:
///   n = 2:  pi I / (4 ||K|| ||psi|| Vol_g)
///   n > 2:  (n-1) w_{n-1} I / (4 n ||Ric|| ||psi|| Vol_g)
/// A flat factor (curv_sup = 0 with vanishing numerator) yields 0.
GeodesicBoundReport torus_delta_bound(const MetricField& field, const CurvatureField& curv,
                                   const PsiSpec& psi);

/// Same bound through the closed-form power-weight route; used as the
/// independent second path for cross-checks.
GeodesicBoundReport torus_delta_bound_power(const MetricField& field, const CurvatureField& curv,
                                    double alpha);

struct AlphaScanResult {
    double alpha_star;
    GeodesicBoundReport best;
    std::vector<std::pair<double, double>> scan;  // (alpha, delta_lb)
};

/// Grid scan over admissible-and-meaningful alphas; argmax with ties broken
/// towards the smallest alpha.
AlphaScanResult optimize_alpha(const MetricField& field, const CurvatureField& curv,
                               const std::vector<double>& alpha_grid);

std::vector<double> default_alpha_grid(int n, int points = 64);

}  // namespace hopf
