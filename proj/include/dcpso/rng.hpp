#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace dcpso {

/// Deterministic random stream. Every stochastic routine in the library
/// draws from an explicitly passed Rng, so a (config, seed) pair reproduces
/// a run bit for bit. The derived draws (uniform01, normal) are implemented
/// here rather than with std::distributions because the standard does not
/// pin their output across library versions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform double in [0, 1), 53 random bits.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Standard normal deviate (Box-Muller, second value cached).
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u = 1.0 - uniform01(); // (0, 1], keeps log() finite
        const double r = std::sqrt(-2.0 * std::log(u));
        const double theta = 2.0 * std::numbers::pi * uniform01();
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

    /// Uniform index in [0, n). n must be positive.
    std::size_t index(std::size_t n) {
        const auto i = static_cast<std::size_t>(uniform01() * static_cast<double>(n));
        return i < n ? i : n - 1;
    }

private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace dcpso
