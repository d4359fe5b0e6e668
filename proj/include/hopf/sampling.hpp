#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "hopf/curves.hpp"

namespace hopf {

/// Identifier of the generator contract, recorded in every report.
inline constexpr const char* kRngId = "splitmix64-counter-v1";

/// Counter-based uniform generator: every draw is a pure function of
/// (seed, stream, counter), so sample streams can be partitioned across
/// any number of workers without changing a single draw.
struct SeededStream {
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
    std::uint64_t counter = 0;

    std::uint64_t next_u64();
    /// Uniform double in [0, 1).
    double next_unit();
};

/// Stateless access to the same sequence.
std::uint64_t stream_u64(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter);
double stream_unit(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter);

/// Billiard phase point distributed by the invariant measure
/// d mu = sin(phi) ds dphi: s uniform on [0, P), phi = arccos(1 - 2u).
struct BilliardDraw {
    double s;
    double phi;
};
BilliardDraw sample_billiard_point(const SampledCurve& c, SeededStream& stream);
std::vector<BilliardDraw> sample_billiard_measure(const SampledCurve& c, SeededStream stream,
                                                  int n);

/// Tensor-product quadrature of integrand(s, phi) sin(phi) dphi ds over the
/// phase cylinder [0, P) x (0, pi). The s direction uses the periodic
/// uniform rule, phi uses Gauss-Legendre.
double phase_integral_billiard(const SampledCurve& c,
                               const std::function<double(double, double)>& integrand,
                               int n_s = 1024, int n_phi = 64);

struct ConfidenceInterval {
    double delta_hat;
    double stderr_;
    double lo95;
    double hi95;
};

/// Binomial point estimate with Wilson 95% interval.
ConfidenceInterval confidence_interval(long hits, long samples);

/// Deterministic worker pool: evaluates fn(i) for i in [0, n) partitioned
/// over `workers` threads. Results must be written to per-index slots by fn;
/// the partition never affects any value.
void parallel_for(long n, int workers, const std::function<void(long)>& fn);

}  // namespace hopf
