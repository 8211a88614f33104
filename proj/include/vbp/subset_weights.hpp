#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "vbp/errors.hpp"
#include "vbp/rational.hpp"

namespace vbp {

// Weight encoding for subsets of the k small items: a subset X (bitmask
// over bits 0..k-1, bit i-1 for item i) gets weight
//
//     f(X) = |X| * 2^k + X.
//
// Summing f over a family of masks hits k*2^k + (2^k - 1) exactly when the
// family partitions {1..k}: the high counter pins the total cardinality to
// k, so the low k bits add without carries, and all-ones then forces
// disjoint full coverage. Values are arbitrary-precision so that no k can
// silently overflow (engines cap practical k far below that anyway).

inline Integer encodeSubset(std::uint64_t mask, int k) {
    if (k < 0 || (k < 64 && mask >= (1ULL << k)))
        throw StructuralError("subset mask out of range for universe size");
    Integer high = static_cast<unsigned long>(std::popcount(mask));
    mpz_mul_2exp(high.get_mpz_t(), high.get_mpz_t(), k);
    return high + Integer(static_cast<unsigned long>(mask));
}

inline Integer targetWeight(int k) {
    if (k < 0) throw StructuralError("negative universe size");
    Integer high = static_cast<unsigned long>(k);
    mpz_mul_2exp(high.get_mpz_t(), high.get_mpz_t(), k);
    Integer low = 1;
    mpz_mul_2exp(low.get_mpz_t(), low.get_mpz_t(), k);
    return high + low - 1;
}

inline bool isPartitionByWeights(const std::vector<std::uint64_t>& masks, int k) {
    Integer sum = 0;
    for (auto m : masks) sum += encodeSubset(m, k);
    return sum == targetWeight(k);
}

// Coordinate sums of every subset of the given rows, indexed by bitmask.
// Each mask extends mask&(mask-1) by one row, so the whole table costs
// O(2^k * d) additions. `width` pins the row width when `items` may be
// empty (the empty subset still needs a zero vector of the right arity).
inline std::vector<std::vector<Rational>> subsetLoads(
    const std::vector<std::vector<Rational>>& items, const std::vector<int>& rows,
    int width = -1) {
    int k = static_cast<int>(rows.size());
    if (k > 26) throw BudgetError("subset table for " + std::to_string(k) +
                                  " rows exceeds the enumeration budget");
    int d = width >= 0 ? width
                       : (items.empty() ? 0 : static_cast<int>(items[0].size()));
    std::vector<std::vector<Rational>> table(1u << k, std::vector<Rational>(d, Rational(0)));
    for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
        std::uint32_t low = mask & (mask - 1);
        int bit = std::countr_zero(mask);
        const auto& item = items[rows[bit]];
        for (int j = 0; j < d; ++j) table[mask][j] = table[low][j] + item[j];
    }
    return table;
}

}  // namespace vbp
