#include "rtplan/sampling.hpp"

#include <cmath>
#include <stdexcept>

namespace rtplan {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double neighborhood_radius(int sample_count, int dimension, double mu_free, double gamma_s) {
    if (sample_count < 2) throw std::invalid_argument("neighborhood_radius requires at least 2 samples");
    if (mu_free <= 0.0) throw std::invalid_argument("free-space measure must be positive");
    if (dimension < 1) throw std::invalid_argument("dimension must be positive");
    if (gamma_s <= 1.0) throw std::invalid_argument("gamma_s must exceed 1");

    const double d = static_cast<double>(dimension);
    // Unit-ball volume; only d = 2 is exercised but the general form is cheap.
    const double zeta_d = std::pow(3.14159265358979323846, d / 2.0) / std::tgamma(d / 2.0 + 1.0);
    const double n = static_cast<double>(sample_count);
    return gamma_s * 2.0 * std::pow(1.0 + 1.0 / d, 1.0 / d) * std::pow(mu_free / zeta_d, 1.0 / d) *
           std::pow(std::log(n) / n, 1.0 / d);
}

std::vector<Config> sample_free(const World& world, const SamplerParams& params) {
    if (params.count < 0) throw std::invalid_argument("sample count must be nonnegative");
    const double inflation = world.robot.radius;
    if (!point_free(world.start, world, inflation)) throw std::invalid_argument("start configuration is not free");
    if (!point_free(world.goal, world, inflation)) throw std::invalid_argument("goal configuration is not free");

    Rng rng(params.seed);
    std::vector<Config> samples;
    samples.reserve(static_cast<std::size_t>(params.count) + 2);

    const std::uint64_t max_attempts = 1000ULL * static_cast<std::uint64_t>(std::max(params.count, 1));
    std::uint64_t attempts = 0;
    while (samples.size() < static_cast<std::size_t>(params.count)) {
        if (attempts++ >= max_attempts) {
            throw std::runtime_error("sample_free: rejection sampling exceeded 1000*N attempts");
        }
        const Config p{rng.uniform(0.0, world.bounds.width), rng.uniform(0.0, world.bounds.height)};
        if (point_free(p, world, inflation)) samples.push_back(p);
    }
    samples.push_back(world.start);
    samples.push_back(world.goal);
    return samples;
}

}  // namespace rtplan
