#include "hopf/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <thread>

#include "hopf/errors.hpp"

namespace hopf {

namespace {

inline std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// 5-point Gauss-Legendre on [-1, 1].
constexpr double kGlNode[5] = {-0.9061798459386640, -0.5384693101056831, 0.0,
                               0.5384693101056831, 0.9061798459386640};
constexpr double kGlWeight[5] = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                 0.4786286704993665, 0.2369268850561891};

}  // namespace

std::uint64_t stream_u64(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
    return splitmix64(splitmix64(splitmix64(seed) ^ stream) ^ counter);
}

double stream_unit(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
    return static_cast<double>(stream_u64(seed, stream, counter) >> 11) * 0x1.0p-53;
}

std::uint64_t SeededStream::next_u64() { return stream_u64(seed, stream, counter++); }

double SeededStream::next_unit() { return stream_unit(seed, stream, counter++); }

BilliardDraw sample_billiard_point(const SampledCurve& c, SeededStream& stream) {
    double u1 = stream.next_unit();
    double u2 = stream.next_unit();
    return {u1 * c.perimeter(), std::acos(1.0 - 2.0 * u2)};
}

std::vector<BilliardDraw> sample_billiard_measure(const SampledCurve& c, SeededStream stream,
                                                  int n) {
    if (n < 1) throw ValidationError("sample count must be >= 1");
    std::vector<BilliardDraw> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i) out.push_back(sample_billiard_point(c, stream));
    return out;
}

double phase_integral_billiard(const SampledCurve& c,
                               const std::function<double(double, double)>& integrand,
                               int n_s, int n_phi) {
    const double P = c.perimeter();
    const double hs = P / n_s;
    // Composite Gauss-Legendre in phi over (0, pi).
    const int cells = (n_phi + 4) / 5;
    const double hphi = std::numbers::pi / cells;
    double acc = 0.0;
    for (int i = 0; i < n_s; ++i) {
        double s = (i + 0.5) * hs;
        double row = 0.0;
        for (int cell = 0; cell < cells; ++cell) {
            double mid = (cell + 0.5) * hphi, half = 0.5 * hphi;
            for (int q = 0; q < 5; ++q) {
                double phi = mid + half * kGlNode[q];
                row += kGlWeight[q] * half * integrand(s, phi) * std::sin(phi);
            }
        }
        acc += row * hs;
    }
    return acc;
}

ConfidenceInterval confidence_interval(long hits, long samples) {
    if (samples <= 0) throw ValidationError("confidence interval needs samples >= 1");
    if (hits < 0 || hits > samples)
        throw ValidationError("hits must lie in [0, samples]");
    const double p = static_cast<double>(hits) / samples;
    const double se = std::sqrt(p * (1.0 - p) / samples);
    const double z = 1.959963984540054;  // 97.5% normal quantile
    const double n = static_cast<double>(samples);
    const double den = 1.0 + z * z / n;
    const double center = (p + z * z / (2.0 * n)) / den;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n)) / den;
    return {p, se, center - half, center + half};
}

void parallel_for(long n, int workers, const std::function<void(long)>& fn) {
    if (workers < 1) workers = 1;
    if (workers == 1 || n < 2) {
        for (long i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::exception_ptr error;
    std::mutex error_mutex;
    long chunk = (n + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        long lo = w * chunk, hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&, lo, hi] {
            try {
                for (long i = lo; i < hi; ++i) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> g(error_mutex);
                if (!error) error = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace hopf
