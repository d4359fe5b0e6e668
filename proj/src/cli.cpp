#include "hopf/cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>

#include "hopf/billiard.hpp"
#include "hopf/billiard_bounds.hpp"
#include "hopf/conformal_metric.hpp"
#include "hopf/curves.hpp"
#include "hopf/geodesic_bounds.hpp"
#include "hopf/geodesic_sim.hpp"
#include "hopf/sampling.hpp"
#include "hopf/spec_io.hpp"

namespace hopf {

namespace {

using nlohmann::json;
using std::numbers::pi;

json bound_report_json(const BoundReport& r) {
    json b;
    b["surface"] = surface_name(r.surface);
    b["P"] = r.P;
    b["A"] = r.A;
    b["k_min"] = r.k_min;
    if (r.b2_strong) b["b2_strong"] = *r.b2_strong;
    if (r.b2_weak) b["b2_weak"] = *r.b2_weak;
    if (r.b1) b["b1"] = *r.b1;
    if (r.b3) b["b3"] = *r.b3;
    if (r.b4) b["b4"] = *r.b4;
    b["best"] = r.best;
    b["notes"] = r.notes;
    return b;
}

json delta_json(const DeltaEstimate& d) {
    json out;
    out["delta_hat"] = d.delta_hat;
    out["stderr"] = d.stderr_;
    out["window"] = d.window;
    out["samples"] = d.samples;
    out["seed"] = d.seed;
    return out;
}

json geo_bound_json(const GeodesicBoundReport& r) {
    json out;
    out["n"] = r.n;
    out["psi"] = r.psi_descriptor;
    out["psi_integral"] = r.psi_integral;
    out["curv_sup"] = r.curv_sup;
    out["psi_sup"] = r.psi_sup;
    out["vol_g"] = r.vol_g;
    out["delta_lb"] = r.delta_lb;
    if (r.exceeds_one) out["warning"] = "delta_lb exceeds 1";
    return out;
}

struct ReportClock {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

void emit(const json& report, const std::string& out_path, std::ostream& out) {
    if (out_path.empty()) {
        out << report.dump(2) << "\n";
    } else {
        std::ofstream f(out_path);
        if (!f) throw ValidationError("cannot write output file: " + out_path);
        f << report.dump(2) << "\n";
    }
}

json make_report(const std::string& command, const json& inputs, const json& outputs,
                 double seconds) {
    json r;
    r["schema_version"] = "1";
    r["command"] = command;
    r["rng"] = kRngId;
    r["inputs"] = inputs;
    r["outputs"] = outputs;
    r["timing_seconds"] = seconds;
    return r;
}

// ---- subcommand payload builders -----------------------------------------

json run_curve_info(const std::string& spec_path, int samples) {
    SampledCurve c = build_curve(load_curve_spec(spec_path), samples);
    CurveInvariants inv = curve_invariants(c);
    json out;
    out["surface"] = surface_name(c.kind());
    out["n_samples"] = c.n_samples();
    out["P"] = inv.perimeter;
    out["A"] = inv.area;
    out["A_independent"] = inv.area_independent;
    out["k_min"] = inv.k_min;
    out["k_max"] = c.k_max();
    out["gb_residual"] = inv.gb_residual;
    if (c.kind() == SurfaceKind::Sphere)
        out["hemisphere_contained"] = c.hemisphere_contained();
    return out;
}

json run_billiard_bound(const std::string& spec_path, int samples) {
    SampledCurve c = build_curve(load_curve_spec(spec_path), samples);
    return bound_report_json(evaluate_billiard_bounds(c));
}

json run_billiard_delta(const std::string& spec_path, int samples_curve, int window,
                        long samples, std::uint64_t seed, int workers) {
    SampledCurve c = build_curve(load_curve_spec(spec_path), samples_curve);
    DeltaEstimate d = estimate_delta_billiard(c, window, samples, seed, workers);
    json out = delta_json(d);
    BoundReport b = evaluate_billiard_bounds(c);
    out["bound"] = bound_report_json(b);
    out["satisfies_lower_bound"] = d.delta_hat >= b.best - 2.0 * d.stderr_;
    return out;
}

json run_billiard_verify(const std::string& spec_path, int samples_curve, int chords,
                         std::uint64_t seed, bool& consistent) {
    SampledCurve c = build_curve(load_curve_spec(spec_path), samples_curve);
    const double P = c.perimeter();
    const double A = c.area();
    const int kappa = curvature_sign(c.kind());
    json table;
    consistent = true;

    auto record = [&](const std::string& name, double value, double target, double tol) {
        json row;
        row["value"] = value;
        row["target"] = target;
        row["residual"] = value - target;
        row["tolerance"] = tol;
        bool ok = std::abs(value - target) <= tol;
        row["pass"] = ok;
        consistent = consistent && ok;
        table[name] = row;
    };

    double mu_total = phase_integral_billiard(c, [](double, double) { return 1.0; });
    record("measure_total", mu_total, 2.0 * P, 1e-10 * std::max(1.0, 2.0 * P));

    double sin_moment = phase_integral_billiard(c, [](double, double phi) { return std::sin(phi); });
    record("sin_phi_moment", sin_moment, pi * P / 2.0, 1e-8 * std::max(1.0, P));

    double k_sin = phase_integral_billiard(
        c, [&](double s, double phi) { return c.curvature_at(s) * std::sin(phi); });
    record("k_sin_phi_moment", k_sin, (pi / 2.0) * (2.0 * pi - kappa * A),
           1e-8 * std::max(1.0, P));

    // Santalo mean chord identity (Monte Carlo; plane target 2 pi A).
    {
        SeededStream st{seed, 0, 0};
        long n = chords;
        double sum = 0.0, sumsq = 0.0;
        for (long i = 0; i < n; ++i) {
            BilliardDraw d = sample_billiard_point(c, st);
            auto [v, chord] = billiard_step(c, {d.s, d.phi});
            (void)v;
            sum += chord.L;
            sumsq += chord.L * chord.L;
        }
        double mean = sum / n;
        double var = std::max(sumsq / n - mean * mean, 0.0);
        double integral = mean * 2.0 * P;  // E[L] * mu(Omega)
        double se = std::sqrt(var / n) * 2.0 * P;
        json row;
        row["value"] = integral;
        row["stderr"] = se;
        if (c.kind() == SurfaceKind::Flat) {
            double target = 2.0 * pi * A;
            row["target"] = target;
            row["residual"] = integral - target;
            bool ok = std::abs(integral - target) <= 3.0 * se;
            row["pass"] = ok;
            consistent = consistent && ok;
        } else {
            row["note"] = "no closed-form target off the plane; reported only";
        }
        table["santalo_mean_chord"] = row;
    }

    // Generating-function gradient and closed-form derivative checks (plane).
    if (c.kind() == SurfaceKind::Flat) {
        SeededStream st{seed, 1, 0};
        double worst = 0.0;
        for (int i = 0; i < chords / 100 + 16; ++i) {
            double sx = st.next_unit() * P;
            double sy = c.wrap(sx + (0.05 + 0.9 * st.next_unit()) * P);
            GenDerivatives g = generating_derivatives(c, sx, sy);
            double h = 1e-5 * P;
            auto len = [&](double a, double b) { return chord_length(c, a, b); };
            double l1 = (len(sx + h, sy) - len(sx - h, sy)) / (2.0 * h);
            double l2 = (len(sx, sy + h) - len(sx, sy - h)) / (2.0 * h);
            worst = std::max({worst, std::abs(l1 - g.L1), std::abs(l2 - g.L2)});
        }
        json row;
        row["max_abs_error"] = worst;
        row["tolerance"] = 1e-6;
        bool ok = worst <= 1e-6;
        row["pass"] = ok;
        consistent = consistent && ok;
        table["generating_gradient_fd"] = row;
    }

    // Measure preservation: |det DT - 1| in (s, cos phi).
    {
        SeededStream st{seed, 2, 0};
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            BilliardDraw d = sample_billiard_point(c, st);
            if (std::abs(std::cos(d.phi)) > 0.995) continue;
            worst = std::max(worst, std::abs(map_jacobian_det(c, {d.s, d.phi}) - 1.0));
        }
        json row;
        row["max_abs_error"] = worst;
        row["tolerance"] = 1e-6;
        bool ok = worst <= 1e-6;
        row["pass"] = ok;
        consistent = consistent && ok;
        table["map_jacobian"] = row;
    }
    return table;
}

json run_torus_curvature(const std::string& metric_path, int grid) {
    TrigPoly p = load_metric_spec(metric_path);
    MetricField field = eval_field(p, grid);
    CurvatureField curv = curvature_of(field);
    json out;
    out["n"] = p.n;
    out["grid"] = grid;
    out["curv_sup"] = curv.curv_sup;
    out["vol_g"] = curv.vol_g;
    if (p.n == 2) {
        double total = 0.0;
        for (long i = 0; i < field.n_points; ++i) total += curv.K[i] * field.f[i];
        total = total / field.n_points * field.domain_volume();
        out["total_curvature"] = total;  // Gauss-Bonnet: 0 on the torus
    } else {
        double worst = 0.0;
        for (long i = 0; i < field.n_points; ++i) {
            double tr = 0.0;
            for (int d = 0; d < p.n; ++d)
                tr += curv.ric(MetricField::pack_index(p.n, d, d), i);
            worst = std::max(worst, std::abs(tr / field.f[i] - curv.scal[i]));
        }
        out["trace_consistency_max"] = worst;
    }
    return out;
}

json run_torus_bound(const std::string& metric_path, int grid, double alpha,
                     const std::string& alpha_scan) {
    TrigPoly p = load_metric_spec(metric_path);
    MetricField field = eval_field(p, grid);
    CurvatureField curv = curvature_of(field);
    json out;
    if (alpha_scan.empty()) {
        out = geo_bound_json(torus_delta_bound(field, curv, PsiSpec::power(alpha)));
    } else {
        double lo, hi;
        int steps;
        char colon;
        std::istringstream ss(alpha_scan);
        ss >> lo >> colon >> hi >> colon >> steps;
        if (!ss || steps < 1) throw ValidationError("--alpha-scan expects LO:HI:STEPS");
        std::vector<double> grid_a;
        for (int i = 0; i < steps; ++i)
            grid_a.push_back(steps == 1 ? lo : lo + (hi - lo) * i / (steps - 1.0));
        AlphaScanResult scan = optimize_alpha(field, curv, grid_a);
        out["alpha_star"] = scan.alpha_star;
        out["best"] = geo_bound_json(scan.best);
        json rows = json::array();
        for (auto [a, v] : scan.scan) rows.push_back({{"alpha", a}, {"delta_lb", v}});
        out["scan"] = rows;
    }
    return out;
}

json run_torus_delta(const std::string& metric_path, double horizon, long samples,
                     std::uint64_t seed, int workers, double tol, int grid) {
    TrigPoly p = load_metric_spec(metric_path);
    DeltaEstimate d = estimate_delta_geodesic(p, horizon, samples, seed, workers, tol);
    json out = delta_json(d);
    MetricField field = eval_field(p, grid);
    CurvatureField curv = curvature_of(field);
    GeodesicBoundReport b = torus_delta_bound(field, curv, PsiSpec::power(2.0));
    out["bound"] = geo_bound_json(b);
    out["satisfies_lower_bound"] = d.delta_hat >= b.delta_lb - 2.0 * d.stderr_;
    return out;
}

void run_sweep(const std::string& config_path, const std::string& out_csv, std::ostream& out) {
    json cfg;
    try {
        cfg = json::parse(read_file(config_path));
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("bad JSON in ") + config_path + ": " + e.what());
    }
    const std::string kind = cfg.at("sweep").get<std::string>();
    const int curve_samples = cfg.value("samples_per_curve", 4096);
    const bool with_delta = cfg.contains("delta");
    int window = 0, workers = 1;
    long mc_samples = 0;
    std::uint64_t seed = 0;
    if (with_delta) {
        window = cfg["delta"].value("window", 16);
        mc_samples = cfg["delta"].value("samples", 2000L);
        seed = cfg["delta"].value("seed", 1ULL);
        workers = cfg["delta"].value("workers", 1);
    }

    std::ostringstream csv;
    csv << "family,param,P,A,k_min,defect,b1,b2_strong,b2_weak,best,delta_hat,delta_stderr,"
           "window,samples,seed\n";
    csv.precision(17);

    auto emit_row = [&](const std::string& family, double param, const CurveSpec& spec) {
        SampledCurve c = build_curve(spec, curve_samples);
        BoundReport b = evaluate_billiard_bounds(c);
        double defect = b.P * b.P - 4.0 * pi * b.A;
        csv << family << "," << param << "," << b.P << "," << b.A << "," << b.k_min << ","
            << defect << "," << (b.b1 ? *b.b1 : 0.0) << "," << (b.b2_strong ? *b.b2_strong : 0.0)
            << "," << (b.b2_weak ? *b.b2_weak : 0.0) << "," << b.best;
        if (with_delta) {
            DeltaEstimate d = estimate_delta_billiard(c, window, mc_samples, seed, workers);
            csv << "," << d.delta_hat << "," << d.stderr_ << "," << window << "," << mc_samples
                << "," << seed;
        } else {
            csv << ",,,,,";
        }
        csv << "\n";
    };

    if (kind == "ellipse") {
        double b = cfg.value("b", 1.0);
        double lo = cfg.at("a_min").get<double>(), hi = cfg.at("a_max").get<double>();
        int steps = cfg.at("steps").get<int>();
        for (int i = 0; i < steps; ++i) {
            double a = steps == 1 ? lo : lo + (hi - lo) * i / (steps - 1.0);
            CurveSpec spec;
            spec.kind = SurfaceKind::Flat;
            spec.shape = EllipseSpec{std::max(a, b), std::min(a, b)};
            emit_row("ellipse", a, spec);
        }
    } else if (kind == "support_fourier") {
        double c0 = cfg.value("c0", 1.0);
        int m = cfg.value("m", 3);
        double lo = cfg.at("amp_min").get<double>(), hi = cfg.at("amp_max").get<double>();
        int steps = cfg.at("steps").get<int>();
        for (int i = 0; i < steps; ++i) {
            double amp = steps == 1 ? lo : lo + (hi - lo) * i / (steps - 1.0);
            CurveSpec spec;
            spec.kind = SurfaceKind::Flat;
            SupportFourierSpec sf;
            sf.h.c0 = c0;
            if (amp != 0.0) sf.h.harmonics.push_back({m, amp, 0.0});
            spec.shape = sf;
            emit_row("support_fourier", amp, spec);
        }
    } else {
        throw ValidationError("unknown sweep kind '" + kind + "'");
    }

    if (out_csv.empty()) {
        out << csv.str();
    } else {
        std::ofstream f(out_csv);
        if (!f) throw ValidationError("cannot write output file: " + out_csv);
        f << csv.str();
    }
}

}  // namespace

int run_command(const std::vector<std::string>& args, nlohmann::json* report_out,
                std::ostream& out, std::ostream& err) {
    CLI::App app{"hopflab: rigidity bounds and minimal-orbit statistics for convex billiards "
                 "and conformal torus geodesic flows"};
    app.require_subcommand(1);

    std::string spec_path, metric_path, config_path, out_path, alpha_scan;
    int curve_samples = 4096, window = 32, workers = 1, grid = 256, chords = 100000;
    long mc_samples = 100000;
    std::uint64_t seed = 1;
    double alpha = 2.0, horizon = 50.0, tol = 1e-8;

    auto* ci = app.add_subcommand("curve-info", "curve invariants and Gauss-Bonnet residual");
    ci->add_option("--spec", spec_path)->required();
    ci->add_option("--samples", curve_samples);

    auto* bb = app.add_subcommand("billiard-bound", "closed-form delta lower bounds");
    bb->add_option("--spec", spec_path)->required();
    bb->add_option("--samples", curve_samples);

    auto* bd = app.add_subcommand("billiard-delta", "Monte Carlo delta estimate vs bounds");
    bd->add_option("--spec", spec_path)->required();
    bd->add_option("--window", window);
    bd->add_option("--samples", mc_samples);
    bd->add_option("--seed", seed);
    bd->add_option("--workers", workers);
    bd->add_option("--curve-samples", curve_samples);

    auto* bv = app.add_subcommand("billiard-verify", "phase-space identity residual table");
    bv->add_option("--spec", spec_path)->required();
    bv->add_option("--samples", curve_samples);
    bv->add_option("--chords", chords);
    bv->add_option("--seed", seed);

    auto* tc = app.add_subcommand("torus-curvature", "conformal curvature norms and volume");
    tc->add_option("--metric", metric_path)->required();
    tc->add_option("--grid", grid);

    auto* tb = app.add_subcommand("torus-bound", "torus delta lower bound for psi = f^alpha");
    tb->add_option("--metric", metric_path)->required();
    tb->add_option("--grid", grid);
    tb->add_option("--alpha", alpha);
    tb->add_option("--alpha-scan", alpha_scan, "LO:HI:STEPS");

    auto* td = app.add_subcommand("torus-delta", "Monte Carlo geodesic delta vs bound");
    td->add_option("--metric", metric_path)->required();
    td->add_option("--horizon", horizon);
    td->add_option("--samples", mc_samples);
    td->add_option("--seed", seed);
    td->add_option("--workers", workers);
    td->add_option("--tol", tol);
    td->add_option("--grid", grid);

    auto* sw = app.add_subcommand("sweep", "parameter sweep to CSV");
    sw->add_option("--config", config_path)->required();
    sw->add_option("--out", out_path);

    for (auto* sub : {ci, bb, bd, bv, tc, td, tb})
        sub->add_option("--out", out_path, "write the JSON report to a file");

    std::vector<const char*> argv;
    argv.push_back("hopflab");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "argument error: " << e.what() << "\n";
        return 1;
    }

    ReportClock clock;
    try {
        json inputs, outputs;
        std::string command;
        if (ci->parsed()) {
            command = "curve-info";
            inputs = {{"spec", spec_path},
                      {"digest", file_digest(spec_path)},
                      {"n_samples", curve_samples}};
            outputs = run_curve_info(spec_path, curve_samples);
        } else if (bb->parsed()) {
            command = "billiard-bound";
            inputs = {{"spec", spec_path},
                      {"digest", file_digest(spec_path)},
                      {"n_samples", curve_samples}};
            outputs = run_billiard_bound(spec_path, curve_samples);
        } else if (bd->parsed()) {
            command = "billiard-delta";
            inputs = {{"spec", spec_path},    {"digest", file_digest(spec_path)},
                      {"window", window},     {"samples", mc_samples},
                      {"seed", seed},         {"workers", workers},
                      {"n_samples", curve_samples}};
            outputs = run_billiard_delta(spec_path, curve_samples, window, mc_samples, seed,
                                         workers);
        } else if (bv->parsed()) {
            command = "billiard-verify";
            inputs = {{"spec", spec_path},
                      {"digest", file_digest(spec_path)},
                      {"n_samples", curve_samples},
                      {"chords", chords},
                      {"seed", seed}};
            bool consistent = false;
            outputs = run_billiard_verify(spec_path, curve_samples, chords, seed, consistent);
            json report = make_report(command, inputs, outputs, clock.seconds());
            if (report_out) *report_out = report;
            emit(report, out_path, out);
            if (!consistent) {
                err << "identity residual beyond tolerance (see report)\n";
                return 2;
            }
            return 0;
        } else if (tc->parsed()) {
            command = "torus-curvature";
            inputs = {{"metric", metric_path},
                      {"digest", file_digest(metric_path)},
                      {"grid", grid}};
            outputs = run_torus_curvature(metric_path, grid);
        } else if (tb->parsed()) {
            command = "torus-bound";
            inputs = {{"metric", metric_path},
                      {"digest", file_digest(metric_path)},
                      {"grid", grid}};
            if (alpha_scan.empty())
                inputs["alpha"] = alpha;
            else
                inputs["alpha_scan"] = alpha_scan;
            outputs = run_torus_bound(metric_path, grid, alpha, alpha_scan);
        } else if (td->parsed()) {
            command = "torus-delta";
            inputs = {{"metric", metric_path}, {"digest", file_digest(metric_path)},
                      {"horizon", horizon},    {"samples", mc_samples},
                      {"seed", seed},          {"workers", workers},
                      {"tol", tol},            {"grid", grid}};
            outputs = run_torus_delta(metric_path, horizon, mc_samples, seed, workers, tol, grid);
        } else if (sw->parsed()) {
            run_sweep(config_path, out_path, out);
            return 0;
        }
        json report = make_report(command, inputs, outputs, clock.seconds());
        if (report_out) *report_out = report;
        emit(report, out_path, out);
        return 0;
    } catch (const InternalConsistencyError& e) {
        err << "internal consistency error: " << e.what() << "\n";
        return 2;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace hopf
