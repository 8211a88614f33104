#pragma once

#include <atomic>
#include <bit>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "vbp/exact_matching.hpp"
#include "vbp/instance.hpp"
#include "vbp/io.hpp"
#include "vbp/multigraph.hpp"
#include "vbp/reduction.hpp"
#include "vbp/rng.hpp"
#include "vbp/sieve.hpp"
#include "vbp/solver.hpp"
#include "vbp/subset_weights.hpp"

namespace vbp {

namespace app_detail {

inline long long toPositiveInteger(const Rational& p, const std::string& what) {
    if (p.get_den() != 1)
        throw StructuralError(what + " must be an integer");
    if (p.get_num() <= 0)
        throw StructuralError(what + " must be a positive integer");
    if (!p.get_num().fits_slong_p())
        throw StructuralError(what + " does not fit in 64 bits");
    return static_cast<long long>(p.get_num().get_si());
}

inline std::vector<int> smallRowsOf(const Instance& inst) {
    if (!inst.promiseNone) return inst.small;
    std::vector<int> rows(inst.items.size());
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = static_cast<int>(i);
    return rows;
}

}  // namespace app_detail

// ---------------------------------------------------------------------------
// Multiple knapsack: pick a subset of items that packs into `bins` unit
// bins with total profit >= goalProfit. Excluded items are absorbed by
// blocker nodes whose edges cost nothing, so the maximum matching cost at
// the subset-partition weight target equals the best packable profit.
// ---------------------------------------------------------------------------

struct KnapsackReduction {
    bool trivial = false;
    bool trivialAnswer = false;

    MatchingGraph graph;
    long long target = 0;
    long long goal = 0;
    int k = 0;
    std::vector<std::string> nodeLabels;
};

inline KnapsackReduction reduceKnapsackToMatching(const Instance& inst,
                                                  int maxSmall = 26) {
    inst.checkShape();
    if (inst.profits.size() != inst.items.size())
        throw StructuralError("knapsack instances need one profit per item");
    if (!inst.hasGoal) throw StructuralError("knapsack instances need 'goal_profit'");

    KnapsackReduction red;
    std::vector<long long> profit(inst.items.size());
    long long totalProfit = 0;
    for (std::size_t i = 0; i < inst.items.size(); ++i) {
        profit[i] = app_detail::toPositiveInteger(
            inst.profits[i], "profits[" + std::to_string(i) + "]");
        if (__builtin_add_overflow(totalProfit, profit[i], &totalProfit))
            throw StructuralError("total profit does not fit in 64 bits");
    }
    red.goal = app_detail::toPositiveInteger(inst.goalProfit, "goal_profit");

    std::vector<int> smallRows = app_detail::smallRowsOf(inst);
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

    // No bins or no items: nothing can be packed, and the goal is >= 1.
    if (inst.bins == 0 || inst.itemCount() == 0) {
        red.trivial = true;
        red.trivialAnswer = false;
        return red;
    }

    // Node layout: large items, then dummies (zero-size bin fillers), then
    // blockers. g blockers always leave exactly 2*bins non-blocker nodes
    // to the bin pairing; the dummy count absorbs the parity of L + g.
    int g = std::max(L, 1);
    int D = 2 * inst.bins + ((L + g) % 2);
    int N = L + D + g;
    int nonBlockers = L + D;

    red.k = k;
    red.target = targetWeightOf(k);
    red.graph.nodes = N;
    red.nodeLabels.resize(N);
    for (int i = 0; i < N; ++i)
        red.nodeLabels[i] = i < L             ? "large:" + std::to_string(large[i])
                            : i < nonBlockers ? "dummy:" + std::to_string(i - L)
                                              : "blocker:" + std::to_string(i - nonBlockers);

    auto loads = subsetLoads(inst.items, smallRows, inst.dimension);
    std::vector<long long> maskProfit(loads.size(), 0);
    for (std::uint32_t mask = 1; mask < maskProfit.size(); ++mask) {
        std::uint32_t low = mask & (mask - 1);
        int bit = std::countr_zero(mask);
        maskProfit[mask] = maskProfit[low] + profit[smallRows[bit]];
    }

    std::vector<Rational> pairLoad(inst.dimension);
    for (int a = 0; a < nonBlockers; ++a) {
        for (int b = a + 1; b < nonBlockers; ++b) {
            long long pairProfit = 0;
            for (int j = 0; j < inst.dimension; ++j) {
                pairLoad[j] = 0;
                if (a < L) pairLoad[j] += inst.items[large[a]][j];
                if (b < L) pairLoad[j] += inst.items[large[b]][j];
            }
            if (a < L) pairProfit += profit[large[a]];
            if (b < L) pairProfit += profit[large[b]];
            for (std::uint32_t mask : enumerateFittingMasks(pairLoad, loads))
                red.graph.addEdge(a, b, encodedWeightOf(mask, k),
                                  pairProfit + maskProfit[mask], mask);
        }
    }
    // Blocker edges exclude their endpoint and carry any subset of small
    // items out of the packing at zero cost.
    for (int c = nonBlockers; c < N; ++c)
        for (int a = 0; a < nonBlockers; ++a)
            for (std::uint32_t mask = 0; mask < loads.size(); ++mask)
                red.graph.addEdge(a, c, encodedWeightOf(mask, k), 0, mask);
    return red;
}

inline bool solveKnapsack(const Instance& inst, const EngineConfig& cfg,
                          SolveStats* stats = nullptr) {
    if (cfg.engine == Engine::Gf2Sieve)
        throw StructuralError(
            "the gf2 engine cannot track costs; use the pfaffian engine for "
            "knapsack");
    KnapsackReduction red = reduceKnapsackToMatching(inst);
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
    auto best = exactMatchingMaxCost(red.graph, red.target, cfg, red.goal);
    return best && *best >= red.goal;
}

// ---------------------------------------------------------------------------
// Bin covering: partition all items into exactly `bins` groups, each
// satisfying the covering predicate. Per guess (l0, l1, l2) of how many
// bins hold 0/1/2 large items, surplus large items pair with blockers and
// later form covered triples (the 3-covering promise); small items ride
// edge masks, including blocker edges, so any of them may end up in a
// triple-covered bin.
// ---------------------------------------------------------------------------

struct CoveringGuess {
    int l0 = 0, l1 = 0, l2 = 0;
};

inline std::vector<CoveringGuess> enumerateCoveringGuesses(int bins, int L) {
    std::vector<CoveringGuess> out;
    for (int l0 = 0; l0 <= bins; ++l0)
        for (int l1 = 0; l0 + l1 <= bins && l1 <= L; ++l1)
            for (int l2 = 0; l0 + l1 + l2 <= bins && l1 + 2 * l2 <= L; ++l2) {
                int g = L - l1 - 2 * l2;
                if (l0 + l1 + l2 + g / 3 >= bins) out.push_back({l0, l1, l2});
            }
    return out;
}

struct CoveringReduction {
    MatchingGraph graph;
    long long target = 0;
    int k = 0;
    std::vector<std::string> nodeLabels;
};

inline CoveringReduction reduceCoveringToMatching(const Instance& inst,
                                                  CoverPred pred,
                                                  const CoveringGuess& guess,
                                                  int maxSmall = 26) {
    inst.checkShape();
    CoveringReduction red;

    std::vector<int> smallRows = app_detail::smallRowsOf(inst);
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
    int g = L - guess.l1 - 2 * guess.l2;
    if (g < 0) throw StructuralError("covering guess exceeds the large item count");

    int D = 2 * guess.l0 + guess.l1;
    int N = L + D + g;
    int nonBlockers = L + D;

    red.k = k;
    red.target = targetWeightOf(k);
    red.graph.nodes = N;
    red.nodeLabels.resize(N);
    for (int i = 0; i < N; ++i)
        red.nodeLabels[i] = i < L             ? "large:" + std::to_string(large[i])
                            : i < nonBlockers ? "dummy:" + std::to_string(i - L)
                                              : "blocker:" + std::to_string(i - nonBlockers);

    auto loads = subsetLoads(inst.items, smallRows, inst.dimension);
    std::vector<Rational> pairLoad(inst.dimension);
    std::vector<Rational> sum(inst.dimension);
    for (int a = 0; a < nonBlockers; ++a) {
        for (int b = a + 1; b < nonBlockers; ++b) {
            for (int j = 0; j < inst.dimension; ++j) {
                pairLoad[j] = 0;
                if (a < L) pairLoad[j] += inst.items[large[a]][j];
                if (b < L) pairLoad[j] += inst.items[large[b]][j];
            }
            for (std::uint32_t mask = 0; mask < loads.size(); ++mask) {
                for (int j = 0; j < inst.dimension; ++j)
                    sum[j] = pairLoad[j] + loads[mask][j];
                if (Instance::coversUnit(sum, pred))
                    red.graph.addEdge(a, b, encodedWeightOf(mask, k), 0, mask);
            }
        }
    }
    // Blockers absorb the large items destined for triple-covered bins;
    // their edges carry every mask so small items can be routed there too.
    for (int c = nonBlockers; c < N; ++c)
        for (int a = 0; a < L; ++a)
            for (std::uint32_t mask = 0; mask < loads.size(); ++mask)
                red.graph.addEdge(a, c, encodedWeightOf(mask, k), 0, mask);
    return red;
}

inline bool solveCovering(const Instance& inst, CoverPred pred,
                          const EngineConfig& cfg, int jobs = 1,
                          SolveStats* stats = nullptr) {
    if (cfg.engine == Engine::Gf2Sieve)
        throw StructuralError(
            "covering masks are not downward closed, which the gf2 engine "
            "requires; use the pfaffian engine");
    inst.checkShape();
    if (stats) *stats = {};
    // Zero bins are vacuously covered.
    if (inst.bins == 0) {
        if (stats) stats->trivial = true;
        return true;
    }

    std::vector<int> smallRows = app_detail::smallRowsOf(inst);
    int L = inst.itemCount() - static_cast<int>(smallRows.size());
    auto guesses = enumerateCoveringGuesses(inst.bins, L);
    if (stats) stats->guesses = static_cast<int>(guesses.size());

    std::atomic<bool> found{false};
    std::atomic<int> nextGuess{0};
    std::exception_ptr firstError = nullptr;
    std::mutex errorLock;

    auto worker = [&]() {
        for (;;) {
            int idx = nextGuess.fetch_add(1);
            if (idx >= static_cast<int>(guesses.size()) || found.load()) return;
            try {
                CoveringReduction red =
                    reduceCoveringToMatching(inst, pred, guesses[idx]);
                EngineConfig sub = cfg;
                sub.seed = Rng(cfg.seed, static_cast<std::uint64_t>(idx)).next();
                if (red.graph.nodes == 0) {
                    // Possible only when no items exist; an empty matching
                    // covers nothing, so the empty partition works iff the
                    // target is trivial.
                    if (red.target == 0) found.store(true);
                } else if (exactMatchingDecide(red.graph, red.target, sub)) {
                    found.store(true);
                }
            } catch (...) {
                std::lock_guard<std::mutex> hold(errorLock);
                if (!firstError) firstError = std::current_exception();
                found.store(true);  // stop other workers
            }
        }
    };

    int workers = std::max(1, std::min<int>(jobs, static_cast<int>(guesses.size())));
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (firstError) std::rethrow_exception(firstError);
    return found.load();
}

// ---------------------------------------------------------------------------
// Perfect matching with hitting constraints: does some perfect matching
// contain k distinct edges, one from each constraint set? Constraint i
// contributes a parallel copy of each of its edges tagged {i}; the weight
// target forces exactly one tagged copy per constraint into the matching.
// ---------------------------------------------------------------------------

struct HittingReduction {
    bool trivial = false;
    bool trivialAnswer = false;

    MatchingGraph graph;
    long long target = 0;
    int k = 0;
};

inline HittingReduction reduceHittingToMatching(const HittingInstance& h,
                                                int maxConstraints = 26) {
    HittingReduction red;
    int k = static_cast<int>(h.constraints.size());
    if (k > maxConstraints)
        throw BudgetError("instance has " + std::to_string(k) +
                          " constraints; the encoding budget is " +
                          std::to_string(maxConstraints));
    red.k = k;
    red.target = targetWeightOf(k);
    if (h.nodes % 2 != 0) {
        red.trivial = true;
        red.trivialAnswer = false;
        return red;
    }
    if (h.nodes == 0) {
        red.trivial = true;
        red.trivialAnswer = (k == 0);
        return red;
    }
    red.graph.nodes = h.nodes;
    for (auto [u, v] : h.edges) red.graph.addEdge(u, v, 0, 0, 0);
    for (int i = 0; i < k; ++i)
        for (int e : h.constraints[i])
            red.graph.addEdge(h.edges[e].first, h.edges[e].second,
                              encodedWeightOf(1u << i, k), 0, 1u << i);
    return red;
}

inline bool solveHitting(const HittingInstance& h, const EngineConfig& cfg,
                         SolveStats* stats = nullptr) {
    HittingReduction red = reduceHittingToMatching(h);
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
    if (cfg.engine == Engine::Gf2Sieve)
        // Tags here are singletons, so a matching whose tag union covers
        // all constraints necessarily uses k distinct tagged copies.
        return sieveDecide(red.graph, red.k, cfg);
    return exactMatchingDecide(red.graph, red.target, cfg);
}

}  // namespace vbp
