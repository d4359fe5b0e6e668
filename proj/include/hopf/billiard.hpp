#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <utility>
#include <vector>

#include "hopf/curves.hpp"
#include "hopf/sampling.hpp"

namespace hopf {

/// Billiard boundary state: arclength s (mod P) and inward angle phi in (0, pi).
struct PhasePoint {
    double s;
    double phi;
};

/// One billiard chord from gamma(s_x) to gamma(s_y).
struct ChordData {
    double L;    // geodesic chord length
    double phi;  // outgoing angle at x
    double psi;  // incoming angle at y
    double s_x;
    double s_y;
};

/// Generating-function value and partial derivatives (plane only).
struct GenDerivatives {
    double L;
    double L1;
    double L2;
    double L11;
    double L12;
    double L22;
};

/// Symmetric tridiagonal second-variation matrix over the interior points of
/// a configuration segment. `coupling` holds every consecutive-pair mixed
/// derivative b_n = L12(s_n, s_{n+1}) including the two endpoint couplings;
/// the matrix off-diagonal is its interior slice.
struct SecondVariation {
    Eigen::VectorXd diag;      // c_i over interior points, size m-2
    Eigen::VectorXd coupling;  // b_n for n = 0..m-2, size m-1
    int size() const { return static_cast<int>(diag.size()); }
    Eigen::VectorXd offdiag() const { return coupling.segment(1, std::max(0, size() - 1)); }
    Eigen::MatrixXd dense() const;
};

struct DeltaEstimate {
    double delta_hat;
    double stderr_;
    double window;  // N (bounces) or T (arclength)
    long samples;
    std::uint64_t seed;
};

/// Involution (s, phi) -> (s, pi - phi); conjugates the map to its inverse.
inline PhasePoint reverse_point(const PhasePoint& u) { return {u.s, std::numbers::pi - u.phi}; }

/// One application of the billiard map. Returns the next phase point and the
/// chord joining the two boundary states.
std::pair<PhasePoint, ChordData> billiard_step(const SampledCurve& c, const PhasePoint& u);

PhasePoint billiard_step_back(const SampledCurve& c, const PhasePoint& u);

/// Chord generating function L(s_x, s_y) = geodesic distance between boundary
/// points; works on all three surfaces.
double chord_length(const SampledCurve& c, double s_x, double s_y);

/// Closed-form generating derivatives on the plane.
GenDerivatives generating_derivatives(const SampledCurve& c, double s_x, double s_y);

/// Mirror focusing jump at a bounce: (J, J') -> (J, J' - (2k/sin phi) J).
JacobiState reflect_jacobi(const JacobiState& state, double k, double phi);

/// Second variation of the chord-length sum over a configuration segment
/// (list of consecutive bounce arclengths). Plane entries are analytic;
/// curved surfaces use Richardson-extrapolated finite differences.
SecondVariation second_variation(const SampledCurve& c, const std::vector<double>& s_list);

/// All pivots of the LDL^T recursion negative.
bool is_negative_definite(const SecondVariation& sv);

/// Discrete Jacobi field seeded (0, 1) at the left end of the segment stays
/// strictly positive; by the tridiagonal minor identity this is equivalent to
/// is_negative_definite whenever the twist entries b_i are positive.
bool segment_field_positive(const SecondVariation& sv);

/// Window classifier: iterates the orbit of u from bounce -N to +N, propagates
/// the discrete Jacobi field seeded at -N, and reports true when the field
/// changes sign more than once (the orbit is then certainly not minimal).
bool classify_m_window(const SampledCurve& c, const PhasePoint& u, int N);

/// Monte Carlo estimate of the non-minimal phase-space fraction, sampling the
/// invariant measure sin(phi) ds dphi. Worker-count invariant for fixed seed.
DeltaEstimate estimate_delta_billiard(const SampledCurve& c, int N, long samples,
                                      std::uint64_t seed, int workers = 1);

/// Central finite-difference Jacobian determinant of the map in the
/// symplectic coordinates (s, cos phi); equals 1 for an area-preserving map.
double map_jacobian_det(const SampledCurve& c, const PhasePoint& u, double step = 1e-5);

}  // namespace hopf
