#pragma once

#include <cmath>
#include <cstdint>

namespace vlab {

/// splitmix64: tiny counter-based generator; identical streams on every
/// platform, which the reproducibility contract depends on.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// uniform in (0,1]
    double uniform_pos() { return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53; }
    /// uniform in [0,1)
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

/// Documented stream-splitting rule: independent substream s of a seed.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    SplitMix64 g(seed ^ (0x9E3779B97F4A7C15ULL * (stream + 1)));
    return g.next();
}

/// Standard normals via Box-Muller on splitmix64 uniforms.
struct NormalSampler {
    SplitMix64 gen;
    double spare = 0.0;
    bool has_spare = false;

    explicit NormalSampler(std::uint64_t seed) : gen(seed) {}

    double operator()() {
        if (has_spare) {
            has_spare = false;
            return spare;
        }
        double u1 = gen.uniform_pos();
        double u2 = gen.uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 2.0 * M_PI * u2;
        spare = r * std::sin(a);
        has_spare = true;
        return r * std::cos(a);
    }
};

} // namespace vlab
