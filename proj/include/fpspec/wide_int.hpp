#pragma once

#include <cstdint>
#include <string>

namespace fpspec {

// Moment accumulators. E4 of a set of size n reaches n^5 and the AA+AA
// square sums reach n^8, so 64 bits is not enough.
using u128 = unsigned __int128;

inline std::string to_string(u128 v) {
    if (v == 0) return "0";
    std::string out;
    while (v != 0) {
        out.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
    }
    return {out.rbegin(), out.rend()};
}

inline double to_double(u128 v) {
    const auto hi = static_cast<std::uint64_t>(v >> 64);
    const auto lo = static_cast<std::uint64_t>(v);
    return static_cast<double>(hi) * 18446744073709551616.0 + static_cast<double>(lo);
}

inline u128 ipow(u128 base, unsigned k) {
    u128 r = 1;
    while (k-- > 0) r *= base;
    return r;
}

}  // namespace fpspec
