#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace gns {

/// Counter-based randomness: every draw is a pure function of
/// (seed, mode index, component, stream), so generation order never matters.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

inline std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t index, std::uint64_t component,
                                  std::uint64_t stream = 0) {
    std::uint64_t h = splitmix64(seed);
    h = splitmix64(h ^ index);
    h = splitmix64(h ^ (component + 0x100 * stream));
    return h;
}

/// Uniform in [0, 1) with 53 random bits.
inline double counter_uniform(std::uint64_t seed, std::uint64_t index, std::uint64_t component,
                              std::uint64_t stream = 0) {
    return static_cast<double>(counter_hash(seed, index, component, stream) >> 11) * 0x1.0p-53;
}

inline double counter_phase(std::uint64_t seed, std::uint64_t index, std::uint64_t component) {
    return 2.0 * std::numbers::pi * counter_uniform(seed, index, component);
}

/// Standard normal by Box-Muller on two counter streams.
inline double counter_normal(std::uint64_t seed, std::uint64_t index, std::uint64_t component) {
    const double u1 = 1.0 - counter_uniform(seed, index, component, 1);  // (0, 1]
    const double u2 = counter_uniform(seed, index, component, 2);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace gns
