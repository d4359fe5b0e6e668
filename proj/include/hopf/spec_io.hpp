#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "hopf/conformal_metric.hpp"
#include "hopf/curves.hpp"

namespace hopf {

/// Parse a curve spec:
/// {"surface": "flat|sphere|hyperbolic", "type": "ellipse|support_fourier|
///  geodesic_circle|radial_graph", ...parameters}
CurveSpec parse_curve_spec(const nlohmann::json& j);
CurveSpec load_curve_spec(const std::string& path);

/// Parse a metric spec:
/// {"n": 2, "periods": [1,1], "c0": 1.0,
///  "terms": [{"freq": [1,0], "a": 0.3, "b": 0.0}]}
TrigPoly parse_metric_spec(const nlohmann::json& j);
TrigPoly load_metric_spec(const std::string& path);

/// FNV-1a 64-bit digest of a file's bytes, rendered as "fnv1a64:hex".
std::string file_digest(const std::string& path);

std::string read_file(const std::string& path);

}  // namespace hopf
