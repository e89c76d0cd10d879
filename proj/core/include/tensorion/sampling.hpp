#pragma once

#include <cstdint>
#include <random>

namespace tensorion {

// Uniform integer in [0, bound) drawn by rejection from a 64-bit Mersenne
// twister. Unlike std::uniform_int_distribution the sequence is fixed by the
// standard engine alone, so seeded runs agree across standard libraries.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
    if (bound <= 1) return 0;
    const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound);
    std::uint64_t v;
    do {
        v = rng();
    } while (v >= limit);
    return v % bound;
}

}  // namespace tensorion
