#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "rtplan/geometry.hpp"

namespace rtplan {

/// Deterministic RNG wrapper. All draws are derived from the raw mt19937_64
/// output with explicit bit manipulation so that runs are reproducible
/// independently of the standard library's distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1).
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) {
        // Modulo bias is negligible for the small n used here, but rejection
        // keeps draws exactly uniform.
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
        std::uint64_t v = next_u64();
        while (v >= limit) v = next_u64();
        return v % n;
    }

    /// Unit vector with uniform angle.
    Config unit_vector() {
        const double a = uniform(0.0, 2.0 * 3.14159265358979323846);
        return Config{std::cos(a), std::sin(a)};
    }

private:
    std::mt19937_64 engine_;
};

/// Stateless seed mixing (splitmix64) for deriving independent streams.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt);

struct SamplerParams {
    int count = 0;            // N, free-space samples drawn before start/goal
    double gamma_s = 1.1;     // tuning factor, > 1
    int dimension = 2;        // d
    std::uint64_t seed = 0;
};

/// Connection radius r_n from the sample count, dimension, free-space
/// measure and tuning factor (natural logarithm, unit-ball volume pi in 2D).
double neighborhood_radius(int sample_count, int dimension, double mu_free, double gamma_s);

/// N uniform rejection samples over the static free space (robot-radius
/// inflated), with the start and goal configurations appended at the end.
/// Throws when the start or goal is not free or when rejection sampling
/// exceeds 1000 * N attempts.
std::vector<Config> sample_free(const World& world, const SamplerParams& params);

}  // namespace rtplan
