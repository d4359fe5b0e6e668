#include "hopf/conformal_metric.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <utility>

namespace hopf {

namespace {

using std::numbers::pi;

constexpr long kMaxGridPoints = 1L << 26;

long ipow(long base, int exp) {
    long v = 1;
    for (int i = 0; i < exp; ++i) v *= base;
    return v;
}

// u = log(f)/2 quantities shared by the Ricci formulas.
struct LogJet {
    Eigen::VectorXd du;
    Eigen::MatrixXd hess_u;
    double lap_u;
    double du2;
};

LogJet log_half_jet(double f, const Eigen::VectorXd& grad, const Eigen::MatrixXd& hess,
                    double lap) {
    LogJet out;
    out.du = grad / (2.0 * f);
    out.hess_u = hess / (2.0 * f) - grad * grad.transpose() / (2.0 * f * f);
    out.lap_u = lap / (2.0 * f) - grad.squaredNorm() / (2.0 * f * f);
    out.du2 = out.du.squaredNorm();
    return out;
}

Eigen::MatrixXd conformal_ricci(int n, double f, const Eigen::VectorXd& grad,
                                const Eigen::MatrixXd& hess, double lap) {
    LogJet u = log_half_jet(f, grad, hess, lap);
    Eigen::MatrixXd ric = -(n - 2.0) * (u.hess_u - u.du * u.du.transpose());
    ric -= (u.lap_u + (n - 2.0) * u.du2) * Eigen::MatrixXd::Identity(n, n);
    return ric;
}

double scalar_direct(int n, double f, const Eigen::VectorXd& grad, double lap) {
    return (1.0 - n) * lap / (f * f) +
           (1.0 - n) * (n - 6.0) / 4.0 * grad.squaredNorm() / (f * f * f);
}

}  // namespace

TrigPoly TrigPoly::constant(int n, double value) {
    TrigPoly p;
    p.n = n;
    p.periods = Eigen::VectorXd::Ones(n);
    p.c0 = value;
    return p;
}

void TrigPoly::validate_shape() const {
    if (n < 2) throw ValidationError("conformal factor dimension must be >= 2");
    if (periods.size() != n) throw ValidationError("periods must have one entry per axis");
    if ((periods.array() <= 0.0).any()) throw ValidationError("periods must be positive");
    if (!std::isfinite(c0)) throw ValidationError("constant term must be finite");
    for (const auto& t : terms) {
        if (t.freq.size() != n) throw ValidationError("term frequency must have n entries");
        if (t.freq.isZero()) throw ValidationError("term frequency must be nonzero");
        if (!std::isfinite(t.a) || !std::isfinite(t.b))
            throw ValidationError("term coefficients must be finite");
    }
}

Eigen::VectorXd TrigPoly::omega(const Term& t) const {
    return 2.0 * pi * t.freq.cast<double>().array() / periods.array();
}

double TrigPoly::eval(const Eigen::VectorXd& x) const {
    double v = c0;
    for (const auto& t : terms) {
        double th = omega(t).dot(x);
        v += t.a * std::cos(th) + t.b * std::sin(th);
    }
    return v;
}

TrigPoly::Jet TrigPoly::eval_jet(const Eigen::VectorXd& x) const {
    Jet jet;
    jet.f = c0;
    jet.grad = Eigen::VectorXd::Zero(n);
    jet.hess = Eigen::MatrixXd::Zero(n, n);
    jet.lap = 0.0;
    for (const auto& t : terms) {
        Eigen::VectorXd w = omega(t);
        double th = w.dot(x);
        double cv = std::cos(th), sv = std::sin(th);
        double val = t.a * cv + t.b * sv;
        double dval = -t.a * sv + t.b * cv;  // d/dth
        jet.f += val;
        jet.grad += dval * w;
        jet.hess -= val * (w * w.transpose());
        jet.lap -= val * w.squaredNorm();
    }
    return jet;
}

TrigPoly::Jet2 TrigPoly::eval_jet2(double x, double y) const {
    if (n != 2) throw ValidationError("eval_jet2 requires a 2-dimensional factor");
    Jet2 out{c0, 0.0, 0.0, 0.0, 0.0, 0.0};
    for (const auto& t : terms) {
        double wx = 2.0 * pi * t.freq[0] / periods[0];
        double wy = 2.0 * pi * t.freq[1] / periods[1];
        double th = wx * x + wy * y;
        double cv = std::cos(th), sv = std::sin(th);
        double val = t.a * cv + t.b * sv;
        double dval = -t.a * sv + t.b * cv;
        out.f += val;
        out.fx += dval * wx;
        out.fy += dval * wy;
        out.fxx -= val * wx * wx;
        out.fxy -= val * wx * wy;
        out.fyy -= val * wy * wy;
    }
    return out;
}

double MetricField::cell_volume() const {
    double cell = 1.0;
    for (int d = 0; d < poly.n; ++d) cell *= poly.periods[d] / m;
    return cell;
}

double MetricField::domain_volume() const { return poly.periods.prod(); }

Eigen::VectorXd MetricField::point_at(long idx) const {
    Eigen::VectorXd x(poly.n);
    for (int d = poly.n - 1; d >= 0; --d) {
        x[d] = (idx % m) * poly.periods[d] / m;
        idx /= m;
    }
    return x;
}

int MetricField::pack_index(int n, int i, int j) {
    if (i > j) std::swap(i, j);
    return i * n - i * (i - 1) / 2 + (j - i);
}

namespace {

// Minimum of f over the oversampled validation grid; phase recurrences keep
// the sweep cheap at large resolutions.
std::pair<double, Eigen::VectorXd> min_on_grid(const TrigPoly& p, int m_dense) {
    const int n = p.n;
    const long total = ipow(m_dense, n);
    const int nt = static_cast<int>(p.terms.size());

    std::vector<Eigen::VectorXd> omegas(nt);
    for (int j = 0; j < nt; ++j) omegas[j] = p.omega(p.terms[j]);

    double best = std::numeric_limits<double>::infinity();
    long best_idx = 0;
    Eigen::VectorXd x(n);
    std::vector<int> idx(n, 0);

    std::vector<double> cos_cur(nt), sin_cur(nt), cos_step(nt), sin_step(nt);
    const long rows = total / m_dense;
    for (long row = 0; row < rows; ++row) {
        long rem = row;
        for (int d = n - 2; d >= 0; --d) {
            idx[d] = static_cast<int>(rem % m_dense);
            rem /= m_dense;
        }
        for (int d = 0; d + 1 < n; ++d) x[d] = idx[d] * p.periods[d] / m_dense;
        x[n - 1] = 0.0;
        for (int j = 0; j < nt; ++j) {
            double th = omegas[j].dot(x);
            cos_cur[j] = std::cos(th);
            sin_cur[j] = std::sin(th);
            double dth = omegas[j][n - 1] * p.periods[n - 1] / m_dense;
            cos_step[j] = std::cos(dth);
            sin_step[j] = std::sin(dth);
        }
        for (int i = 0; i < m_dense; ++i) {
            double v = p.c0;
            for (int j = 0; j < nt; ++j)
                v += p.terms[j].a * cos_cur[j] + p.terms[j].b * sin_cur[j];
            if (v < best) {
                best = v;
                best_idx = row * m_dense + i;
            }
            for (int j = 0; j < nt; ++j) {
                double c = cos_cur[j] * cos_step[j] - sin_cur[j] * sin_step[j];
                double s = sin_cur[j] * cos_step[j] + cos_cur[j] * sin_step[j];
                cos_cur[j] = c;
                sin_cur[j] = s;
            }
        }
    }
    Eigen::VectorXd loc(n);
    long rem = best_idx;
    for (int d = n - 1; d >= 0; --d) {
        loc[d] = (rem % m_dense) * p.periods[d] / m_dense;
        rem /= m_dense;
    }
    return {best, loc};
}

}  // namespace

MetricField eval_field(const TrigPoly& p, int m) {
    p.validate_shape();
    if (m < 32 || (m & (m - 1)) != 0)
        throw ValidationError("grid resolution must be a power of two >= 32");
    const int n = p.n;
    const long total = ipow(m, n);
    if (total > kMaxGridPoints)
        throw ValidationError("grid too large; use pointwise evaluation for high dimensions");

    // Positivity with margin on the 8x oversampled grid.
    {
        long dense = 8L * m;
        while (ipow(dense, n) > (1L << 28) && dense > m) dense /= 2;
        auto [fmin, where] = min_on_grid(p, static_cast<int>(dense));
        if (!(fmin >= kPositivityMargin)) {
            std::ostringstream os;
            os << "conformal factor not positive with margin: min f = " << fmin << " near (";
            for (int d = 0; d < n; ++d) os << (d ? ", " : "") << where[d];
            os << ")";
            throw ValidationError(os.str());
        }
    }

    MetricField out;
    out.poly = p;
    out.m = m;
    out.n_points = total;
    out.f.resize(total);
    out.grad.resize(n, total);
    out.hess.resize(n * (n + 1) / 2, total);
    out.laplacian.resize(total);

    const int nt = static_cast<int>(p.terms.size());
    std::vector<Eigen::VectorXd> omegas(nt);
    for (int j = 0; j < nt; ++j) omegas[j] = p.omega(p.terms[j]);

    Eigen::VectorXd x(n);
    std::vector<int> idx(n, 0);
    for (long i = 0; i < total; ++i) {
        long rem = i;
        for (int d = n - 1; d >= 0; --d) {
            idx[d] = static_cast<int>(rem % m);
            rem /= m;
        }
        for (int d = 0; d < n; ++d) x[d] = idx[d] * p.periods[d] / m;

        double f = p.c0, lap = 0.0;
        Eigen::VectorXd grad = Eigen::VectorXd::Zero(n);
        Eigen::VectorXd hrow = Eigen::VectorXd::Zero(n * (n + 1) / 2);
        for (int j = 0; j < nt; ++j) {
            const auto& w = omegas[j];
            double th = w.dot(x);
            double cv = std::cos(th), sv = std::sin(th);
            double val = p.terms[j].a * cv + p.terms[j].b * sv;
            double dval = -p.terms[j].a * sv + p.terms[j].b * cv;
            f += val;
            grad += dval * w;
            lap -= val * w.squaredNorm();
            int kidx = 0;
            for (int r = 0; r < n; ++r)
                for (int ccol = r; ccol < n; ++ccol) hrow[kidx++] -= val * w[r] * w[ccol];
        }
        out.f[i] = f;
        out.grad.col(i) = grad;
        out.hess.col(i) = hrow;
        out.laplacian[i] = lap;
    }
    return out;
}

CurvatureField gauss_curvature(const MetricField& field) {
    if (field.dim() != 2) throw ValidationError("gauss_curvature requires n = 2");
    CurvatureField out;
    out.n = 2;
    out.K.resize(field.n_points);
    for (long i = 0; i < field.n_points; ++i) {
        double f = field.f[i];
        double g2 = field.grad.col(i).squaredNorm();
        // K = -Lap(log f)/(2f) with Lap(log f) = (f Lap f - |grad f|^2)/f^2.
        out.K[i] = -(field.laplacian[i] * f - g2) / (2.0 * f * f * f);
    }
    out.curv_sup = out.K.abs().maxCoeff();
    out.vol_g = field.f.mean() * field.domain_volume();
    return out;
}

CurvatureField ricci_and_scalar(const MetricField& field) {
    const int n = field.dim();
    if (n < 3) throw ValidationError("ricci_and_scalar requires n >= 3");
    CurvatureField out;
    out.n = n;
    const int packed = n * (n + 1) / 2;
    out.ric.resize(packed, field.n_points);
    out.scal.resize(field.n_points);
    out.curv_sup = 0.0;

    Eigen::MatrixXd hess(n, n);
    for (long i = 0; i < field.n_points; ++i) {
        const double f = field.f[i];
        Eigen::VectorXd grad = field.grad.col(i);
        int kidx = 0;
        for (int r = 0; r < n; ++r)
            for (int c = r; c < n; ++c) {
                hess(r, c) = field.hess(kidx, i);
                hess(c, r) = hess(r, c);
                ++kidx;
            }
        Eigen::MatrixXd ric = conformal_ricci(n, f, grad, hess, field.laplacian[i]);
        double scal = scalar_direct(n, f, grad, field.laplacian[i]);
        double trace_scal = ric.trace() / f;
        double denom = std::max(1.0, std::abs(scal));
        if (std::abs(trace_scal - scal) > 1e-6 * denom) {
            std::ostringstream os;
            os << "Ricci trace and scalar-curvature formulas disagree at grid index " << i
               << ": " << trace_scal << " vs " << scal;
            throw InternalConsistencyError(os.str());
        }
        kidx = 0;
        for (int r = 0; r < n; ++r)
            for (int c = r; c < n; ++c) out.ric(kidx++, i) = ric(r, c);
        out.scal[i] = scal;

        double radius;
        if (n == 3) {
            Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es;
            es.computeDirect(ric);
            radius = es.eigenvalues().cwiseAbs().maxCoeff();
        } else {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(ric, Eigen::EigenvaluesOnly);
            radius = es.eigenvalues().cwiseAbs().maxCoeff();
        }
        out.curv_sup = std::max(out.curv_sup, radius / f);
    }
    out.vol_g = field.f.pow(0.5 * n).mean() * field.domain_volume();
    return out;
}

CurvatureField curvature_of(const MetricField& field) {
    return field.dim() == 2 ? gauss_curvature(field) : ricci_and_scalar(field);
}

FieldNorms field_norms(const MetricField& field, const CurvatureField& curv,
                       const std::function<double(double)>& psi) {
    double psi_sup = -std::numeric_limits<double>::infinity();
    for (long i = 0; i < field.n_points; ++i) psi_sup = std::max(psi_sup, psi(field.f[i]));
    return {curv.curv_sup, psi_sup, curv.vol_g};
}

double gauss_curvature_at(const TrigPoly& p, double x, double y) {
    TrigPoly::Jet2 j = p.eval_jet2(x, y);
    double lap = j.fxx + j.fyy;
    double g2 = j.fx * j.fx + j.fy * j.fy;
    return -(lap * j.f - g2) / (2.0 * j.f * j.f * j.f);
}

PointCurvature ricci_scalar_at(const TrigPoly& p, const Eigen::VectorXd& x) {
    TrigPoly::Jet jet = p.eval_jet(x);
    PointCurvature out;
    out.ric = conformal_ricci(p.n, jet.f, jet.grad, jet.hess, jet.lap);
    out.scal_direct = scalar_direct(p.n, jet.f, jet.grad, jet.lap);
    out.scal_from_trace = out.ric.trace() / jet.f;
    return out;
}

}  // namespace hopf
