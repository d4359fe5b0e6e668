#include "hopf/geodesic_bounds.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace hopf {

namespace {

using std::numbers::pi;

double numerator_integral(const MetricField& field, const std::function<double(double)>& weight) {
    double acc = 0.0;
    for (long i = 0; i < field.n_points; ++i)
        acc += weight(field.f[i]) * field.grad.col(i).squaredNorm();
    return acc / field.n_points * field.domain_volume();
}

GeodesicBoundReport assemble(const MetricField& field, const CurvatureField& curv,
                             const std::function<double(double)>& psi_eval,
                             const std::function<double(double)>& weight,
                             const std::string& descriptor) {
    const int n = field.dim();
    FieldNorms norms = field_norms(field, curv, psi_eval);
    if (!(norms.psi_sup > 0.0)) throw ValidationError("psi must be positive on the range of f");

    GeodesicBoundReport r;
    r.n = n;
    r.psi_descriptor = descriptor;
    r.psi_integral = numerator_integral(field, weight);
    r.curv_sup = norms.curv_sup;
    r.psi_sup = norms.psi_sup;
    r.vol_g = norms.vol_g;

    if (norms.curv_sup == 0.0) {
        // Flat factor: the numerator must vanish with it.
        if (std::abs(r.psi_integral) > 1e-10 * std::max(1.0, std::abs(weight(field.f[0]))))
            throw InternalConsistencyError(
                "vanishing curvature norm with a nonzero gradient integral");
        r.delta_lb = 0.0;
        return r;
    }

    double num = (n == 2) ? pi * r.psi_integral
                          : (n - 1.0) * unit_sphere_volume(n - 1) * r.psi_integral;
    double den = (n == 2) ? 4.0 * norms.curv_sup * norms.psi_sup * norms.vol_g
                          : 4.0 * n * norms.curv_sup * norms.psi_sup * norms.vol_g;
    r.delta_lb = std::max(num / den, 0.0);
    r.exceeds_one = r.delta_lb > 1.0;
    return r;
}

}  // namespace

PsiSpec PsiSpec::power(double alpha) {
    PsiSpec s;
    s.kind = Kind::Power;
    s.alpha = alpha;
    return s;
}

PsiSpec PsiSpec::custom(std::function<double(double)> psi, std::function<double(double)> dpsi) {
    PsiSpec s;
    s.kind = Kind::Custom;
    s.psi = std::move(psi);
    s.dpsi = std::move(dpsi);
    return s;
}

double PsiSpec::eval(double f) const {
    return kind == Kind::Power ? std::pow(f, alpha) : psi(f);
}

double PsiSpec::deriv(double f) const {
    return kind == Kind::Power ? alpha * std::pow(f, alpha - 1.0) : dpsi(f);
}

std::string PsiSpec::describe() const {
    if (kind == Kind::Custom) return "custom";
    std::ostringstream os;
    os << "f^" << alpha;
    return os.str();
}

bool power_alpha_admissible(int n, double alpha) {
    if (n == 2) return alpha > 0.0 && alpha < 4.0;
    return (n - 2.0) + alpha * (4.0 - alpha) > 0.0;
}

bool power_alpha_meaningful(int n, double alpha) {
    if (n == 2) return alpha > 0.0 && alpha <= 2.0;
    return alpha >= 0.0 && alpha <= 2.0;
}

double capital_psi(int n, const PsiSpec& psi, double f_value) {
    if (!(f_value > 0.0)) throw ValidationError("capital_psi requires f > 0");
    double pv = psi.eval(f_value);
    if (!(pv > 0.0)) throw ValidationError("psi must be positive at the evaluation point");
    double dv = psi.deriv(f_value);
    double core = dv * (4.0 / f_value - dv / pv);
    if (n == 2) return core;
    return std::pow(f_value, 0.5 * n - 1.0) * core +
           (n - 2.0) * std::pow(f_value, 0.5 * n - 3.0) * pv;
}

double capital_psi_power_closed_form(int n, double alpha, double f_value) {
    if (!(f_value > 0.0)) throw ValidationError("capital_psi requires f > 0");
    if (n == 2) return alpha * (4.0 - alpha) * std::pow(f_value, alpha - 2.0);
    return ((n - 2.0) + alpha * (4.0 - alpha)) * std::pow(f_value, 0.5 * n - 3.0 + alpha);
}

double unit_sphere_volume(int n_minus_1) {
    int n = n_minus_1 + 1;
    return 2.0 * std::pow(pi, 0.5 * n) / std::tgamma(0.5 * n);
}

GeodesicBoundReport torus_delta_bound(const MetricField& field, const CurvatureField& curv,
                                   const PsiSpec& psi) {
    const int n = field.dim();
    if (psi.kind == PsiSpec::Kind::Power && !power_alpha_admissible(n, psi.alpha)) {
        std::ostringstream os;
        os << "alpha = " << psi.alpha << " outside the admissible range for n = " << n;
        throw ValidationError(os.str());
    }
    if (psi.kind == PsiSpec::Kind::Custom) {
        // Positivity of psi over the observed range of f.
        double fmin = field.f.minCoeff(), fmax = field.f.maxCoeff();
        for (int i = 0; i <= 64; ++i) {
            double fv = fmin + (fmax - fmin) * i / 64.0;
            if (!(psi.eval(fv) > 0.0))
                throw ValidationError("custom psi must be positive on [min f, max f]");
        }
    }
    auto weight = [&](double f) { return capital_psi(n, psi, f); };
    auto peval = [&](double f) { return psi.eval(f); };
    return assemble(field, curv, peval, weight, psi.describe());
}

GeodesicBoundReport torus_delta_bound_power(const MetricField& field, const CurvatureField& curv,
                                    double alpha) {
    const int n = field.dim();
    if (!power_alpha_admissible(n, alpha)) {
        std::ostringstream os;
        os << "alpha = " << alpha << " outside the admissible range for n = " << n;
        throw ValidationError(os.str());
    }
    auto weight = [&, n, alpha](double f) { return capital_psi_power_closed_form(n, alpha, f); };
    auto peval = [alpha](double f) { return std::pow(f, alpha); };
    std::ostringstream os;
    os << "f^" << alpha << " (closed form)";
    return assemble(field, curv, peval, weight, os.str());
}

AlphaScanResult optimize_alpha(const MetricField& field, const CurvatureField& curv,
                               const std::vector<double>& alpha_grid) {
    const int n = field.dim();
    std::vector<double> grid;
    for (double a : alpha_grid)
        if (power_alpha_admissible(n, a) && power_alpha_meaningful(n, a)) grid.push_back(a);
    if (grid.empty())
        throw ValidationError("alpha grid has no admissible points in the meaningful range");

    AlphaScanResult out;
    out.alpha_star = grid.front();
    bool first = true;
    for (double a : grid) {
        GeodesicBoundReport r = torus_delta_bound(field, curv, PsiSpec::power(a));
        out.scan.emplace_back(a, r.delta_lb);
        if (first || r.delta_lb > out.best.delta_lb) {
            out.best = r;
            out.alpha_star = a;
            first = false;
        }
    }
    return out;
}

std::vector<double> default_alpha_grid(int n, int points) {
    std::vector<double> grid;
    double lo = (n == 2) ? 2.0 / points : 0.0;
    for (int i = 0; i < points; ++i) grid.push_back(lo + (2.0 - lo) * i / (points - 1.0));
    return grid;
}

}  // namespace hopf
