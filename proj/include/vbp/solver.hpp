#pragma once

#include <bit>
#include <optional>

#include "vbp/exact_matching.hpp"
#include "vbp/instance.hpp"
#include "vbp/reduction.hpp"
#include "vbp/rng.hpp"
#include "vbp/sieve.hpp"

namespace vbp {

// Reduction/engine counters surfaced in structured CLI output.
struct SolveStats {
    bool trivial = false;
    int nodes = 0;
    long long edges = 0;
    int k = 0;
    long long target = 0;
    int repeats = 0;
    int guesses = 0;  // covering only
};

// Decide whether the items pack into inst.bins unit bins. One-sided Monte
// Carlo: YES is certain, NO is wrong with probability at most 2^-repeats.
inline bool solvePack(const Instance& inst, const EngineConfig& cfg,
                      SolveStats* stats = nullptr) {
    PackingReduction red = reducePackingToMatching(inst);
    if (stats) {
        *stats = {};
        stats->trivial = red.trivial;
        if (!red.trivial) {
            stats->nodes = red.graph.nodes;
            stats->edges = static_cast<long long>(red.graph.edges.size());
            stats->k = red.k;
            stats->target = red.target;
            stats->repeats = cfg.effectiveRepeats(red.graph.nodes);
        }
    }
    if (red.trivial) return red.trivialAnswer;
    if (cfg.engine == Engine::Gf2Sieve) {
        // Fitting subsets are downward closed, so "some matching's tag
        // union covers all small items" coincides with "some matching's
        // tags partition them", which is what the weight target encodes.
        return sieveDecide(red.graph, red.k, cfg);
    }
    return exactMatchingDecide(red.graph, red.target, cfg);
}

// Smallest bin count that packs the instance, or nullopt when even one
// bin per item fails (an item exceeds a capacity on its own). Uses
// monotone binary search; per-probe repeats are raised by log2(n) so the
// compounded false-NO probability stays at the single-call level.
inline std::optional<int> minBins(Instance inst, const EngineConfig& cfg,
                                  SolveStats* stats = nullptr) {
    inst.checkShape();
    int n = inst.itemCount();
    if (n == 0) return 0;

    int L = inst.promiseNone ? 0 : n - inst.smallCount();
    int lo = std::max(1, (L + 1) / 2);
    int hi = n;

    EngineConfig probe = cfg;
    probe.repeats = cfg.effectiveRepeats(2 * n) + std::bit_width(
                        static_cast<unsigned>(n));

    auto decide = [&](int bins) {
        inst.bins = bins;
        EngineConfig c = probe;
        c.seed = Rng(probe.seed, static_cast<std::uint64_t>(bins)).next();
        return solvePack(inst, c, stats);
    };

    if (!decide(hi)) return std::nullopt;
    while (lo < hi) {
        int mid = lo + (hi - lo) / 2;
        if (decide(mid))
            hi = mid;
        else
            lo = mid + 1;
    }
    return hi;
}

}  // namespace vbp
