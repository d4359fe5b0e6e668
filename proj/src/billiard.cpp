#include "hopf/billiard.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <numeric>
#include <sstream>

namespace hopf {

namespace {

using std::numbers::pi;

struct ChordGeometry {
    double L;
    double sin_phi, cos_phi;  // at x
    double sin_psi, cos_psi;  // at y
};

// Angles of the chord x -> y against the boundary frames at both ends.
// sin_phi, sin_psi are positive for chords through the interior.
ChordGeometry chord_geometry(const SampledCurve& c, double s_x, double s_y) {
    const SurfaceKind kind = c.kind();
    CurveFrame fx = c.frame_at(s_x);
    CurveFrame fy = c.frame_at(s_y);
    double L = geodesic_distance(kind, fx.point, fy.point);
    if (!(L > 0.0)) throw ValidationError("chord endpoints coincide");
    TangentDir dep = direction_towards(kind, fx.point, fy.point);
    // Parallel transport of the chord direction to the far endpoint.
    Eigen::Vector3d arr;
    switch (kind) {
        case SurfaceKind::Flat: arr = dep.v; break;
        case SurfaceKind::Sphere:
            arr = -std::sin(L) * fx.point.v + std::cos(L) * dep.v;
            break;
        case SurfaceKind::Hyperbolic:
            arr = std::sinh(L) * fx.point.v + std::cosh(L) * dep.v;
            break;
    }
    Eigen::Vector3d nx = surface_normal(kind, fx.point, fx.tangent);
    Eigen::Vector3d ny = surface_normal(kind, fy.point, fy.tangent);
    ChordGeometry g;
    g.L = L;
    g.cos_phi = metric_dot(kind, dep.v, fx.tangent.v);
    g.sin_phi = metric_dot(kind, dep.v, nx);
    g.cos_psi = metric_dot(kind, arr, fy.tangent.v);
    g.sin_psi = -metric_dot(kind, arr, ny);
    return g;
}

int sign_of(double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); }

// Count sign changes of a discrete Jacobi field, skipping the seeded zero at
// index 0. An exact interior zero counts once when the neighbors disagree in
// sign (a crossing) and twice when they agree (a tangential vanishing).
int count_sign_changes(const std::vector<double>& xi) {
    int count = 0;
    int prev = sign_of(xi[1]);
    const int last = static_cast<int>(xi.size()) - 1;
    for (int i = 2; i <= last; ++i) {
        if (xi[i] == 0.0) {
            if (i == last) {
                ++count;
            } else {
                int nxt = sign_of(xi[i + 1]);
                if (nxt == prev) {
                    count += 2;
                } else {
                    ++count;
                    if (nxt != 0) prev = nxt;
                }
            }
        } else {
            int s = sign_of(xi[i]);
            if (s != prev) {
                ++count;
                prev = s;
            }
        }
    }
    return count;
}

// Richardson-extrapolated central second difference.
double second_diff(const std::function<double(double)>& f, double x, double h) {
    auto d = [&](double hh) { return (f(x + hh) - 2.0 * f(x) + f(x - hh)) / (hh * hh); };
    return (4.0 * d(0.5 * h) - d(h)) / 3.0;
}

double mixed_diff(const std::function<double(double, double)>& f, double x, double y, double h) {
    auto d = [&](double hh) {
        return (f(x + hh, y + hh) - f(x + hh, y - hh) - f(x - hh, y + hh) + f(x - hh, y - hh)) /
               (4.0 * hh * hh);
    };
    return (4.0 * d(0.5 * h) - d(h)) / 3.0;
}

}  // namespace

Eigen::MatrixXd SecondVariation::dense() const {
    const int m = size();
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
        a(i, i) = diag[i];
        if (i + 1 < m) a(i, i + 1) = a(i + 1, i) = coupling[i + 1];
    }
    return a;
}

std::pair<PhasePoint, ChordData> billiard_step(const SampledCurve& c, const PhasePoint& u) {
    const SurfaceKind kind = c.kind();
    const double P = c.perimeter();
    if (!(u.phi > 0.0 && u.phi < pi))
        throw ValidationError("billiard phase angle must lie strictly inside (0, pi)");
    const double s = c.wrap(u.s);

    CurveFrame fx = c.frame_at(s);
    Eigen::Vector3d nin = surface_normal(kind, fx.point, fx.tangent);
    Eigen::Vector3d d = std::cos(u.phi) * fx.tangent.v + std::sin(u.phi) * nin;

    // Normal of the geodesic through (x, d); its zero set cuts the boundary
    // exactly at s and at the sought exit point.
    Eigen::Vector3d nrm = Eigen::Vector3d::Zero();
    switch (kind) {
        case SurfaceKind::Flat: nrm = Eigen::Vector3d(-d.y(), d.x(), 0.0); break;
        case SurfaceKind::Sphere: nrm = fx.point.v.cross(d).normalized(); break;
        case SurfaceKind::Hyperbolic: {
            Eigen::Vector3d cxd = fx.point.v.cross(d);
            cxd.z() = -cxd.z();
            nrm = cxd / std::sqrt(std::max(minkowski_dot(cxd, cxd), 1e-300));
            break;
        }
    }
    const Eigen::Vector3d x0 = fx.point.v;
    auto side = [&](double sigma) {
        Eigen::Vector3d q = c.position_raw(c.wrap(sigma));
        if (kind == SurfaceKind::Flat) return (q - x0).dot(nrm);
        return metric_dot(kind, q, nrm);
    };
    auto side_deriv = [&](double sigma) {
        return metric_dot(kind, c.tangent_raw(c.wrap(sigma)), nrm);
    };

    // Just past s the indicator is negative, just before s + P positive; the
    // exit point is the single crossing in between (strict convexity).
    double off_lo = std::min(std::sin(u.phi) / (4.0 * c.k_max()), P / 16.0);
    double off_hi = off_lo;
    double lo = s + off_lo, hi = s + P - off_hi;
    double flo = side(lo), fhi = side(hi);
    for (int guard = 0; guard < 60 && !(flo < 0.0); ++guard) {
        off_lo *= 0.5;
        lo = s + off_lo;
        flo = side(lo);
    }
    for (int guard = 0; guard < 60 && !(fhi > 0.0); ++guard) {
        off_hi *= 0.5;
        hi = s + P - off_hi;
        fhi = side(hi);
    }
    if (!(flo < 0.0 && fhi > 0.0)) {
        std::ostringstream os;
        os << "billiard root bracketing failed at s = " << s << ", phi = " << u.phi
           << " (indicator " << flo << " / " << fhi << ")";
        throw InternalConsistencyError(os.str());
    }

    for (int it = 0; it < 30; ++it) {
        double mid = 0.5 * (lo + hi);
        (side(mid) < 0.0 ? lo : hi) = mid;
    }
    double root = 0.5 * (lo + hi);
    for (int it = 0; it < 12; ++it) {
        double f = side(root);
        (f < 0.0 ? lo : hi) = root;
        double df = side_deriv(root);
        double step = f / df;
        double next = root - step;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - root) < 1e-14 * P) {
            root = next;
            break;
        }
        root = next;
    }

    const double s_y = c.wrap(root);
    CurveFrame fy = c.frame_at(s_y);
    double L = geodesic_distance(kind, fx.point, fy.point);

    // Direction of arrival at the exit point.
    Eigen::Vector3d arr;
    switch (kind) {
        case SurfaceKind::Flat: arr = d; break;
        case SurfaceKind::Sphere: arr = -std::sin(L) * fx.point.v + std::cos(L) * d; break;
        case SurfaceKind::Hyperbolic: arr = std::sinh(L) * fx.point.v + std::cosh(L) * d; break;
    }
    arr = project_dir(kind, fy.point, arr).v;
    double cpsi = std::clamp(metric_dot(kind, arr, fy.tangent.v), -1.0, 1.0);
    double psi = std::acos(cpsi);

    ChordData chord{L, u.phi, psi, s, s_y};
    return {PhasePoint{s_y, psi}, chord};
}

PhasePoint billiard_step_back(const SampledCurve& c, const PhasePoint& u) {
    auto [v, chord] = billiard_step(c, reverse_point(u));
    (void)chord;
    return reverse_point(v);
}

double chord_length(const SampledCurve& c, double s_x, double s_y) {
    SurfacePoint px = project_point(c.kind(), c.position_raw(c.wrap(s_x)));
    SurfacePoint py = project_point(c.kind(), c.position_raw(c.wrap(s_y)));
    return geodesic_distance(c.kind(), px, py);
}

GenDerivatives generating_derivatives(const SampledCurve& c, double s_x, double s_y) {
    if (c.kind() != SurfaceKind::Flat)
        throw ValidationError("generating derivatives are closed-form on the plane only");
    ChordGeometry g = chord_geometry(c, s_x, s_y);
    double kx = c.curvature_at(s_x);
    double ky = c.curvature_at(s_y);
    GenDerivatives out;
    out.L = g.L;
    out.L1 = -g.cos_phi;
    out.L2 = g.cos_psi;
    out.L11 = g.sin_phi * g.sin_phi / g.L - kx * g.sin_phi;
    out.L12 = g.sin_phi * g.sin_psi / g.L;
    out.L22 = g.sin_psi * g.sin_psi / g.L - ky * g.sin_psi;
    return out;
}

JacobiState reflect_jacobi(const JacobiState& state, double k, double phi) {
    if (!(k > 0.0)) throw ValidationError("reflect_jacobi: curvature must be positive");
    if (!(phi > 0.0 && phi < pi)) throw ValidationError("reflect_jacobi: angle outside (0, pi)");
    return {state.j, state.jp - 2.0 * k / std::sin(phi) * state.j};
}

SecondVariation second_variation(const SampledCurve& c, const std::vector<double>& s_list) {
    const int m = static_cast<int>(s_list.size());
    if (m < 3) throw ValidationError("second variation needs at least 3 configuration points");

    SecondVariation sv;
    sv.diag.resize(m - 2);
    sv.coupling.resize(m - 1);

    if (c.kind() == SurfaceKind::Flat) {
        std::vector<GenDerivatives> chords(m - 1);
        for (int j = 0; j + 1 < m; ++j) chords[j] = generating_derivatives(c, s_list[j], s_list[j + 1]);
        for (int j = 0; j + 1 < m; ++j) sv.coupling[j] = chords[j].L12;
        for (int i = 1; i + 1 < m; ++i) sv.diag[i - 1] = chords[i - 1].L22 + chords[i].L11;
        return sv;
    }

    const double h = 1e-5 * c.perimeter();
    auto len = [&](double a, double b) { return chord_length(c, a, b); };
    for (int j = 0; j + 1 < m; ++j) {
        double a = s_list[j], b = s_list[j + 1];
        sv.coupling[j] = mixed_diff(len, a, b, h);
    }
    for (int i = 1; i + 1 < m; ++i) {
        double sm = s_list[i - 1], s0 = s_list[i], sp = s_list[i + 1];
        auto two_chord = [&](double u) { return len(sm, u) + len(u, sp); };
        sv.diag[i - 1] = second_diff(two_chord, s0, h);
    }
    return sv;
}

bool is_negative_definite(const SecondVariation& sv) {
    const int m = sv.size();
    if (m == 0) throw ValidationError("empty second variation");
    double pivot = sv.diag[0];
    if (!(pivot < 0.0)) return false;
    for (int k = 1; k < m; ++k) {
        double b = sv.coupling[k];
        pivot = sv.diag[k] - b * b / pivot;
        if (!(pivot < 0.0)) return false;
    }
    return true;
}

bool segment_field_positive(const SecondVariation& sv) {
    const int m = sv.size() + 2;
    double xi_prev = 0.0, xi_cur = 1.0;
    for (int n = 1; n + 1 < m; ++n) {
        double xi_next = -(sv.diag[n - 1] * xi_cur + sv.coupling[n - 1] * xi_prev) /
                         sv.coupling[n];
        if (!(xi_next > 0.0)) return false;
        xi_prev = xi_cur;
        xi_cur = xi_next;
    }
    return true;
}

bool classify_m_window(const SampledCurve& c, const PhasePoint& u, int N) {
    if (N < 2) throw ValidationError("window classifier needs N >= 2");
    const int total = 2 * N + 1;
    std::vector<double> s(total), sinp(total), curv(total);
    std::vector<double> chord_len(total - 1);  // chord j joins points j, j+1

    PhasePoint mid{c.wrap(u.s), u.phi};
    s[N] = mid.s;
    sinp[N] = std::sin(mid.phi);

    PhasePoint back = mid;
    for (int j = N - 1; j >= 0; --j) {
        auto [rv, chord] = billiard_step(c, reverse_point(back));
        back = reverse_point(rv);
        s[j] = back.s;
        sinp[j] = std::sin(back.phi);
        chord_len[j] = chord.L;
    }
    PhasePoint fwd = mid;
    for (int j = N + 1; j < total; ++j) {
        auto [nv, chord] = billiard_step(c, fwd);
        fwd = nv;
        s[j] = fwd.s;
        sinp[j] = std::sin(fwd.phi);
        chord_len[j - 1] = chord.L;
    }

    std::vector<double> b(total - 1), diag(total);
    if (c.kind() == SurfaceKind::Flat) {
        for (int j = 0; j < total; ++j) curv[j] = c.curvature_at(s[j]);
        for (int j = 0; j + 1 < total; ++j) b[j] = sinp[j] * sinp[j + 1] / chord_len[j];
        for (int n = 1; n + 1 < total; ++n) {
            double l22 = sinp[n] * sinp[n] / chord_len[n - 1] - curv[n] * sinp[n];
            double l11 = sinp[n] * sinp[n] / chord_len[n] - curv[n] * sinp[n];
            diag[n] = l22 + l11;
        }
    } else {
        const double h = 1e-5 * c.perimeter();
        auto len = [&](double a, double bb) { return chord_length(c, a, bb); };
        for (int j = 0; j + 1 < total; ++j) b[j] = mixed_diff(len, s[j], s[j + 1], h);
        for (int n = 1; n + 1 < total; ++n) {
            auto two_chord = [&](double x) { return len(s[n - 1], x) + len(x, s[n + 1]); };
            diag[n] = second_diff(two_chord, s[n], h);
        }
    }

    std::vector<double> xi(total);
    xi[0] = 0.0;
    xi[1] = 1.0;
    for (int n = 1; n + 1 < total; ++n) {
        xi[n + 1] = -(diag[n] * xi[n] + b[n - 1] * xi[n - 1]) / b[n];
        double mag = std::abs(xi[n + 1]);
        if (mag > 1e100) {  // rescale; only signs matter downstream
            xi[n + 1] *= 1e-100;
            xi[n] *= 1e-100;
        }
    }
    return count_sign_changes(xi) > 1;
}

double map_jacobian_det(const SampledCurve& c, const PhasePoint& u, double step) {
    const double P = c.perimeter();
    const double p0 = std::cos(u.phi);
    double hp = std::min(step, 0.5 * (1.0 - std::abs(p0)));
    if (!(hp > 0.0)) throw ValidationError("phase point too close to the tangential boundary");

    auto apply = [&](double s, double p) {
        auto [v, chord] = billiard_step(c, PhasePoint{s, std::acos(std::clamp(p, -1.0, 1.0))});
        (void)chord;
        return std::make_pair(v.s, std::cos(v.phi));
    };
    auto sdiff = [&](double a, double b) {
        double d = a - b;
        d -= P * std::round(d / P);
        return d;
    };

    auto [sp_s, pp_s] = apply(u.s + step, p0);
    auto [sm_s, pm_s] = apply(u.s - step, p0);
    auto [sp_p, pp_p] = apply(u.s, p0 + hp);
    auto [sm_p, pm_p] = apply(u.s, p0 - hp);

    double j00 = sdiff(sp_s, sm_s) / (2.0 * step);
    double j10 = (pp_s - pm_s) / (2.0 * step);
    double j01 = sdiff(sp_p, sm_p) / (2.0 * hp);
    double j11 = (pp_p - pm_p) / (2.0 * hp);
    return j00 * j11 - j01 * j10;
}

DeltaEstimate estimate_delta_billiard(const SampledCurve& c, int N, long samples,
                                      std::uint64_t seed, int workers) {
    if (samples < 1) throw ValidationError("estimate_delta_billiard needs samples >= 1");
    if (N < 2) throw ValidationError("estimate_delta_billiard needs N >= 2");
    std::vector<std::uint8_t> flagged(samples, 0);
    parallel_for(samples, workers, [&](long i) {
        SeededStream st{seed, static_cast<std::uint64_t>(i), 0};
        BilliardDraw d = sample_billiard_point(c, st);
        flagged[i] = classify_m_window(c, PhasePoint{d.s, d.phi}, N) ? 1 : 0;
    });
    long hits = std::accumulate(flagged.begin(), flagged.end(), 0L);
    ConfidenceInterval ci = confidence_interval(hits, samples);
    return {ci.delta_hat, ci.stderr_, static_cast<double>(N), samples, seed};
}

}  // namespace hopf
