#pragma once

#include <cmath>
#include <cstdint>

namespace arithmos {

inline std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Deterministic pseudo-random value in [-1, 1) for an (index, k, d) triple.
// Used to draw random two-argument functions for the commutation identity
// checks; pure so the same seed reproduces the same function everywhere.
inline double hash_to_unit(std::uint64_t seed, std::uint64_t k, std::uint64_t d) {
    std::uint64_t h = splitmix64(seed ^ (k * 0x9E3779B97F4A7C15ull));
    h = splitmix64(h ^ (d * 0xC2B2AE3D27D4EB4Full));
    return std::ldexp(static_cast<double>(h >> 11), -52) - 1.0;
}

} // namespace arithmos
