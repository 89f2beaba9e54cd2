#pragma once

#include <cstdint>
#include <vector>

#include "fpspec/fp_set.hpp"

namespace testing_support {

inline std::vector<std::uint64_t> to_vec(const fpspec::FpSet& s) {
    return {s.elements().begin(), s.elements().end()};
}

inline fpspec::FpSet make_set(std::uint32_t p, std::initializer_list<std::int64_t> xs) {
    const std::vector<std::int64_t> v(xs);
    return fpspec::FpSet(p, v);
}

}  // namespace testing_support
