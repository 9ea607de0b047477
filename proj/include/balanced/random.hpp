#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace balanced {

/// Portable seeded random source.
///
/// Raw bits come from std::mt19937_64, whose output sequence is fixed by the
/// C++ standard. The std:: distribution adaptors are implementation-defined,
/// so every conversion is done here instead:
///   uniform01  : top 53 bits / 2^53, in [0, 1)
///   normal     : Box-Muller on two uniform01 draws (no caching)
///   below(k)   : rejection sampling, unbiased
/// Same seed gives the same integer stream on every conforming platform;
/// normal draws additionally depend on libm's log/cos being correctly rounded.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t bits() { return engine_(); }

    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    double normal(double mean = 0.0, double stddev = 1.0) {
        double u1 = 1.0 - uniform01();  // (0, 1]
        double u2 = uniform01();
        double r = std::sqrt(-2.0 * std::log(u1));
        return mean + stddev * r * std::cos(2.0 * std::numbers::pi * u2);
    }

    /// Uniform integer in [0, k), k > 0.
    std::uint64_t below(std::uint64_t k) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % k;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % k;
    }

    /// Exponential(1) draw; used for uniform sampling on the simplex.
    double exponential() { return -std::log(1.0 - uniform01()); }

private:
    std::mt19937_64 engine_;
};

}  // namespace balanced
