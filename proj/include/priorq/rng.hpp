#pragma once

#include <cmath>
#include <cstdint>

namespace priorq {

// Counter-based randomness: every variate is a pure function of (seed, index),
// so parallel shards and reruns reproduce exactly.

inline std::uint64_t mix_counter(std::uint64_t seed, std::uint64_t index) {
    // splitmix64 finalizer over a Weyl sequence
    std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Uniform draw in the open interval (0,1).
inline double uniform01(std::uint64_t seed, std::uint64_t index) {
    return (static_cast<double>(mix_counter(seed, index) >> 12) + 0.5) * 0x1.0p-52;
}

/// Standard normal draw; consumes uniform indices 2*index and 2*index+1 (Box-Muller).
inline double standard_normal(std::uint64_t seed, std::uint64_t index) {
    const double u1 = uniform01(seed, 2 * index);
    const double u2 = uniform01(seed, 2 * index + 1);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
}

}  // namespace priorq
