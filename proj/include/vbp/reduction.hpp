#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "vbp/errors.hpp"
#include "vbp/instance.hpp"
#include "vbp/multigraph.hpp"
#include "vbp/subset_weights.hpp"

namespace vbp {

// Word-sized twins of encodeSubset/targetWeight, valid for the k range the
// subset-enumeration budget admits (k <= 26 keeps them far below 2^63).
inline long long encodedWeightOf(std::uint32_t mask, int k) {
    return static_cast<long long>(std::popcount(mask)) * (1LL << k) +
           static_cast<long long>(mask);
}

inline long long targetWeightOf(int k) {
    return static_cast<long long>(k) * (1LL << k) + ((1LL << k) - 1);
}

// Output of the packing -> exact-weight-matching translation. When the
// instance resolves without building a graph (more large items than two
// per bin, or no bins at all), `trivial` carries the verdict instead.
struct PackingReduction {
    bool trivial = false;
    bool trivialAnswer = false;

    MatchingGraph graph;
    long long target = 0;
    int k = 0;
    // nodeLabels[i] describes node i for dump/debug output: "large:<row>"
    // or "dummy:<ordinal>".
    std::vector<std::string> nodeLabels;
};

// All masks of small-item subsets whose load fits in a unit bin together
// with the given pair load. Every fitting mask is listed, not only the
// maximal ones — the weight-target argument needs each subset available.
inline std::vector<std::uint32_t> enumerateFittingMasks(
    const std::vector<Rational>& pairLoad,
    const std::vector<std::vector<Rational>>& loads) {
    std::vector<std::uint32_t> out;
    int d = static_cast<int>(pairLoad.size());
    for (std::uint32_t mask = 0; mask < loads.size(); ++mask) {
        bool fit = true;
        for (int j = 0; j < d && fit; ++j) fit = pairLoad[j] + loads[mask][j] <= 1;
        if (fit) out.push_back(mask);
    }
    return out;
}

// Translate "pack everything into `bins` unit bins" into "does the graph
// have a perfect matching of total weight exactly `target`".
//
// Nodes are the large items padded with zero-size dummies to exactly
// 2*bins, so a perfect matching picks one node pair per bin. For every
// node pair and every subset of small items that fits alongside it, one
// parallel edge carries that subset's encoded weight; hitting the weight
// target forces the chosen subsets to partition the small items.
inline PackingReduction reducePackingToMatching(const Instance& inst,
                                                int maxSmall = 26) {
    inst.checkShape();
    PackingReduction red;

    std::vector<int> smallRows = inst.small;
    if (inst.promiseNone) {
        smallRows.resize(inst.items.size());
        for (std::size_t i = 0; i < smallRows.size(); ++i)
            smallRows[i] = static_cast<int>(i);
    }
    int k = static_cast<int>(smallRows.size());
    if (k > maxSmall)
        throw BudgetError("instance has " + std::to_string(k) +
                          " small items; subset enumeration budget is " +
                          std::to_string(maxSmall));

    std::vector<int> large;
    {
        std::vector<char> isSmall(inst.items.size(), 0);
        for (int s : smallRows) isSmall[s] = 1;
        for (int i = 0; i < inst.itemCount(); ++i)
            if (!isSmall[i]) large.push_back(i);
    }
    int L = static_cast<int>(large.size());

    if (inst.bins == 0) {
        red.trivial = true;
        red.trivialAnswer = (inst.itemCount() == 0);
        return red;
    }
    if (L > 2 * inst.bins) {
        red.trivial = true;
        red.trivialAnswer = false;
        return red;
    }

    auto loads = subsetLoads(inst.items, smallRows, inst.dimension);
    int N = 2 * inst.bins;
    red.graph.nodes = N;
    red.k = k;
    red.target = targetWeightOf(k);
    red.nodeLabels.resize(N);
    for (int i = 0; i < N; ++i)
        red.nodeLabels[i] = i < L ? "large:" + std::to_string(large[i])
                                  : "dummy:" + std::to_string(i - L);

    std::vector<Rational> pairLoad(inst.dimension);
    for (int a = 0; a < N; ++a) {
        for (int b = a + 1; b < N; ++b) {
            for (int j = 0; j < inst.dimension; ++j) {
                pairLoad[j] = 0;
                if (a < L) pairLoad[j] += inst.items[large[a]][j];
                if (b < L) pairLoad[j] += inst.items[large[b]][j];
            }
            for (std::uint32_t mask : enumerateFittingMasks(pairLoad, loads))
                red.graph.addEdge(a, b, encodedWeightOf(mask, k), 0, mask);
        }
    }
    return red;
}

}  // namespace vbp
