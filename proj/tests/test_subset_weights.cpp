#include "vbp/subset_weights.hpp"

#include <gtest/gtest.h>

#include <cstdint>
#include <vector>

#include "corpus.hpp"
#include "vbp/reduction.hpp"
#include "vbp/rng.hpp"

using namespace vbp;

namespace {

// Reference predicate: the masks are pairwise disjoint and their union is
// the full universe {0..k-1}.
bool isPartitionDirect(const std::vector<std::uint64_t>& masks, int k) {
    std::uint64_t seen = 0;
    for (auto m : masks) {
        if (seen & m) return false;
        seen |= m;
    }
    std::uint64_t full = (k >= 64) ? ~0ULL : ((1ULL << k) - 1);
    return seen == full;
}

}  // namespace

TEST(SubsetWeights, KnownEncodings) {
    // Universe {1,2,3}; X = {1,3} is bits 0 and 2 -> mask 0b101.
    EXPECT_EQ(encodeSubset(0b101u, 3), Integer(21));
    EXPECT_EQ(encodeSubset(0u, 3), Integer(0));
    EXPECT_EQ(encodeSubset(0b111u, 3), Integer(3 * 8 + 7));
    EXPECT_EQ(targetWeight(3), Integer(31));
    EXPECT_EQ(targetWeight(5), Integer(191));
    EXPECT_EQ(targetWeight(0), Integer(0));
}

TEST(SubsetWeights, OutOfRangeMaskRejected) {
    EXPECT_THROW(encodeSubset(0b1000u, 3), StructuralError);
    EXPECT_THROW(encodeSubset(1u, 0), StructuralError);
    EXPECT_THROW(targetWeight(-1), StructuralError);
}

TEST(SubsetWeights, CardinalityCounterBlocksRepeats) {
    // 31 singletons {1} sum to 31*9 = 279, not the k=3 target 31: the high
    // counter pins the number of covered elements, so repeats cannot fake
    // a partition even when the low bits would wrap around.
    std::vector<std::uint64_t> masks(31, 0b001u);
    Integer sum = 0;
    for (auto m : masks) sum += encodeSubset(m, 3);
    EXPECT_EQ(sum, Integer(279));
    EXPECT_FALSE(isPartitionByWeights(masks, 3));
}

TEST(SubsetWeights, OverlapDetected) {
    // {1,2} and {2,3} overlap in 2: sum is 19 + 22 = 41 != 31.
    std::vector<std::uint64_t> masks{0b011u, 0b110u};
    Integer sum = 0;
    for (auto m : masks) sum += encodeSubset(m, 3);
    EXPECT_EQ(sum, Integer(41));
    EXPECT_FALSE(isPartitionByWeights(masks, 3));
}

TEST(SubsetWeights, AcceptsTruePartitions) {
    EXPECT_TRUE(isPartitionByWeights({0b101u, 0b010u}, 3));
    EXPECT_TRUE(isPartitionByWeights({0b111u}, 3));
    EXPECT_TRUE(isPartitionByWeights({0b001u, 0b010u, 0b100u}, 3));
    EXPECT_TRUE(isPartitionByWeights({}, 0));
    EXPECT_FALSE(isPartitionByWeights({}, 1));
}

// Exhaustive check for small universes: over every multiset of at most k
// nonempty masks, the weight criterion agrees exactly with the direct
// disjoint-cover predicate. Multisets are enumerated as non-decreasing
// sequences so each one is visited once.
TEST(SubsetWeights, ExhaustiveSmallUniverses) {
    for (int k = 1; k <= 4; ++k) {
        std::uint64_t top = (1ULL << k) - 1;
        std::vector<std::uint64_t> masks;
        long checked = 0;
        auto rec = [&](auto&& self, std::uint64_t minMask) -> void {
            ++checked;
            ASSERT_EQ(isPartitionByWeights(masks, k), isPartitionDirect(masks, k))
                << "k=" << k << " masks=" << ::testing::PrintToString(masks);
            if (static_cast<int>(masks.size()) == k) return;
            for (std::uint64_t m = minMask; m <= top; ++m) {
                masks.push_back(m);
                self(self, m);
                masks.pop_back();
            }
        };
        rec(rec, 1);
        ASSERT_GT(checked, 1);
    }
}

// Random partitions of larger universes are always accepted, and random
// single-element perturbations (drop, duplicate-into-overlap) rejected.
TEST(SubsetWeights, RandomPartitionsRoundTrip) {
    Rng rng(corpus::kBaseSeed, 10);
    for (int trial = 0; trial < 2000; ++trial) {
        int k = static_cast<int>(rng.range(1, 12));
        int parts = static_cast<int>(rng.range(1, k));
        std::vector<std::uint64_t> masks(parts, 0);
        for (int item = 0; item < k; ++item)
            masks[rng.below(parts)] |= 1ULL << item;
        ASSERT_TRUE(isPartitionByWeights(masks, k)) << "k=" << k;

        // Overlap one extra copy of a random used element.
        std::uint64_t bit = 1ULL << rng.below(k);
        auto overlapped = masks;
        overlapped.push_back(bit);
        ASSERT_FALSE(isPartitionByWeights(overlapped, k));

        // Remove one element from whichever mask holds it.
        auto dropped = masks;
        for (auto& m : dropped)
            if (m & bit) {
                m &= ~bit;
                break;
            }
        ASSERT_FALSE(isPartitionByWeights(dropped, k));
    }
}

TEST(SubsetWeights, WordSizedTwinsMatchBignumVersions) {
    Rng rng(corpus::kBaseSeed, 11);
    for (int k : {0, 1, 3, 7, 13, 20, 26}) {
        ASSERT_EQ(Integer(static_cast<long>(targetWeightOf(k))), targetWeight(k))
            << "k=" << k;
        for (int trial = 0; trial < 50; ++trial) {
            std::uint32_t mask =
                k == 0 ? 0 : static_cast<std::uint32_t>(rng.below(1ULL << k));
            ASSERT_EQ(Integer(static_cast<long>(encodedWeightOf(mask, k))),
                      encodeSubset(mask, k))
                << "k=" << k << " mask=" << mask;
        }
    }
}

TEST(SubsetWeights, SubsetLoadsMatchDirectSums) {
    Rng rng(corpus::kBaseSeed, 12);
    for (int trial = 0; trial < 40; ++trial) {
        int n = static_cast<int>(rng.range(1, 6));
        int d = static_cast<int>(rng.range(1, 3));
        std::vector<std::vector<Rational>> items(n, std::vector<Rational>(d));
        for (auto& row : items)
            for (auto& x : row)
                x = corpus::frac(static_cast<long>(rng.below(9)),
                                 static_cast<long>(rng.range(1, 8)));
        std::vector<int> rows;
        for (int i = 0; i < n; ++i)
            if (rng.coin()) rows.push_back(i);
        auto table = subsetLoads(items, rows);
        ASSERT_EQ(table.size(), 1u << rows.size());
        for (std::uint32_t mask = 0; mask < table.size(); ++mask) {
            for (int j = 0; j < d; ++j) {
                Rational direct = 0;
                for (std::size_t b = 0; b < rows.size(); ++b)
                    if (mask >> b & 1) direct += items[rows[b]][j];
                ASSERT_EQ(table[mask][j], direct) << "mask=" << mask;
            }
        }
    }
}

TEST(SubsetWeights, SubsetLoadsBudget) {
    std::vector<std::vector<Rational>> items(30, std::vector<Rational>(1, Rational(0)));
    std::vector<int> rows(27);
    for (int i = 0; i < 27; ++i) rows[i] = i;
    EXPECT_THROW(subsetLoads(items, rows), BudgetError);
}
