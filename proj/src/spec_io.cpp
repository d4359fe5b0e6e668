#include "hopf/spec_io.hpp"

#include <fstream>
#include <sstream>

#include "hopf/errors.hpp"

namespace hopf {

namespace {

SurfaceKind parse_surface(const std::string& s) {
    if (s == "flat") return SurfaceKind::Flat;
    if (s == "sphere") return SurfaceKind::Sphere;
    if (s == "hyperbolic") return SurfaceKind::Hyperbolic;
    throw ValidationError("unknown surface '" + s + "' (expected flat|sphere|hyperbolic)");
}

TrigSeries parse_series(const nlohmann::json& j) {
    TrigSeries out;
    out.c0 = j.value("c0", 0.0);
    if (j.contains("harmonics")) {
        for (const auto& h : j.at("harmonics")) {
            TrigSeries::Harmonic harm;
            harm.m = h.at("m").get<int>();
            harm.a = h.value("a", 0.0);
            harm.b = h.value("b", 0.0);
            out.harmonics.push_back(harm);
        }
    }
    return out;
}

}  // namespace

CurveSpec parse_curve_spec(const nlohmann::json& j) {
    CurveSpec spec;
    spec.kind = parse_surface(j.at("surface").get<std::string>());
    const std::string type = j.at("type").get<std::string>();
    if (type == "ellipse") {
        EllipseSpec e{j.at("a").get<double>(), j.at("b").get<double>()};
        spec.shape = e;
    } else if (type == "support_fourier") {
        SupportFourierSpec sf;
        sf.h = parse_series(j);
        spec.shape = sf;
    } else if (type == "geodesic_circle") {
        spec.shape = GeodesicCircleSpec{j.at("r").get<double>()};
    } else if (type == "radial_graph") {
        RadialGraphSpec rg;
        rg.rho = parse_series(j.at("rho"));
        if (j.contains("center")) {
            auto c = j.at("center");
            if (!c.is_array() || c.size() != 3)
                throw ValidationError("radial graph center must be a 3-vector");
            rg.center = SurfacePoint{{c[0].get<double>(), c[1].get<double>(), c[2].get<double>()}};
            rg.has_center = true;
        }
        spec.shape = rg;
    } else {
        throw ValidationError("unknown curve type '" + type + "'");
    }
    return spec;
}

TrigPoly parse_metric_spec(const nlohmann::json& j) {
    TrigPoly p;
    p.n = j.at("n").get<int>();
    if (p.n < 2) throw ValidationError("metric dimension must be >= 2");
    p.periods = Eigen::VectorXd::Ones(p.n);
    if (j.contains("periods")) {
        auto per = j.at("periods");
        if (!per.is_array() || static_cast<int>(per.size()) != p.n)
            throw ValidationError("periods must list one length per axis");
        for (int d = 0; d < p.n; ++d) p.periods[d] = per[d].get<double>();
    }
    p.c0 = j.at("c0").get<double>();
    if (j.contains("terms")) {
        for (const auto& t : j.at("terms")) {
            TrigPoly::Term term;
            auto freq = t.at("freq");
            if (!freq.is_array() || static_cast<int>(freq.size()) != p.n)
                throw ValidationError("term freq must have n integer entries");
            term.freq.resize(p.n);
            for (int d = 0; d < p.n; ++d) term.freq[d] = freq[d].get<int>();
            term.a = t.value("a", 0.0);
            term.b = t.value("b", 0.0);
            p.terms.push_back(term);
        }
    }
    p.validate_shape();
    return p;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

CurveSpec load_curve_spec(const std::string& path) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_file(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(std::string("bad JSON in ") + path + ": " + e.what());
    }
    try {
        return parse_curve_spec(j);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("bad curve spec ") + path + ": " + e.what());
    }
}

TrigPoly load_metric_spec(const std::string& path) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_file(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(std::string("bad JSON in ") + path + ": " + e.what());
    }
    try {
        return parse_metric_spec(j);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("bad metric spec ") + path + ": " + e.what());
    }
}

std::string file_digest(const std::string& path) {
    std::string bytes = read_file(path);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    std::ostringstream os;
    os << "fnv1a64:" << std::hex << h;
    return os.str();
}

}  // namespace hopf
