#pragma once

#include <cstdint>
#include <vector>

#include "vbp/errors.hpp"

namespace vbp {

// In-place zeta transform over subsets: out[I] = sum over J subseteq I of
// in[J], with addition in characteristic 2 (XOR). Yates' dynamic program,
// one pass per bit: O(2^k * k) word operations.
inline void zetaTransform(std::vector<std::uint64_t>& f) {
    std::size_t n = f.size();
    if (n == 0 || (n & (n - 1)))
        throw StructuralError("zeta transform needs a power-of-two length");
    for (std::size_t bit = 1; bit < n; bit <<= 1)
        for (std::size_t m = 0; m < n; ++m)
            if (m & bit) f[m] ^= f[m ^ bit];
}

}  // namespace vbp
