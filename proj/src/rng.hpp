#pragma once

#include <cstdint>
#include <random>

namespace fpspec::detail {

/// Uniform draw in [0, n) by rejection. Unlike std::uniform_int_distribution
/// the output sequence is identical across standard library implementations.
inline std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
    const std::uint64_t limit = std::mt19937_64::max() - std::mt19937_64::max() % n;
    std::uint64_t x = rng();
    while (x >= limit) x = rng();
    return x % n;
}

/// Uniform double in [0, 1) from the top 53 bits.
inline double unit_double(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11U) * 0x1.0p-53;
}

}  // namespace fpspec::detail
