#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace schedrl {

// One step of the splitmix64 generator. Used to derive independent seeds
// from a (base, tag) pair so that streams never alias across components.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t tag_a, std::uint64_t tag_b = 0) {
    std::uint64_t s = splitmix64(base);
    s = splitmix64(s ^ (tag_a * 0xD1B54A32D192ED03ULL));
    s = splitmix64(s ^ (tag_b * 0x8CB92BA72F3D8DD7ULL));
    return s;
}

// Deterministic random stream. All draws are defined on top of the
// standard-specified mt19937_64 sequence, so identical seeds give
// bit-identical streams on any platform.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform integer in [0, n). Modulo bias is negligible for n << 2^64.
    std::uint64_t uniform_index(std::uint64_t n) { return engine_() % n; }

    // Standard normal via Box-Muller; consumes exactly two uniforms per call.
    double normal() {
        double u1 = 1.0 - uniform();  // (0, 1]
        double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
    }

    // Unit-mean exponential.
    double exponential() { return -std::log1p(-uniform()); }

  private:
    std::mt19937_64 engine_;
};

}  // namespace schedrl
