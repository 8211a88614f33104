#pragma once

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "vbp/cnf.hpp"
#include "vbp/errors.hpp"
#include "vbp/instance.hpp"
#include "vbp/io.hpp"
#include "vbp/multigraph.hpp"
#include "vbp/rational.hpp"

namespace vbp {

// Exhaustive reference solvers. They refuse oversized inputs rather than
// run unbounded; budgets are counted in search steps for determinism.
struct OracleBudget {
    int maxItems = 9;
    int maxNodes = 10;
    int maxK = 4;
    long long maxSteps = 200000000;
};

namespace oracle_detail {

struct StepCounter {
    long long left;
    void tick() {
        if (--left < 0) throw BudgetError("oracle step budget exhausted");
    }
};

inline bool packRec(const Instance& inst, std::size_t item,
                    std::vector<std::vector<Rational>>& loads, int used,
                    StepCounter& steps) {
    if (item == inst.items.size()) return true;
    steps.tick();
    int openable = std::min(used + 1, inst.bins);
    for (int b = 0; b < openable; ++b) {
        bool fits = true;
        for (int j = 0; j < inst.dimension && fits; ++j)
            fits = loads[b][j] + inst.items[item][j] <= 1;
        if (!fits) continue;
        for (int j = 0; j < inst.dimension; ++j) loads[b][j] += inst.items[item][j];
        if (packRec(inst, item + 1, loads, std::max(used, b + 1), steps)) return true;
        for (int j = 0; j < inst.dimension; ++j) loads[b][j] -= inst.items[item][j];
    }
    return false;
}

}  // namespace oracle_detail

// Assignment enumeration with identical-bin symmetry pruning (a new bin
// may only be opened in order).
inline bool brutePack(const Instance& inst, const OracleBudget& budget = {}) {
    inst.checkShape();
    if (inst.itemCount() > budget.maxItems)
        throw BudgetError("packing oracle limited to " +
                          std::to_string(budget.maxItems) + " items");
    if (inst.bins == 0) return inst.itemCount() == 0;
    std::vector<std::vector<Rational>> loads(inst.bins,
                                             std::vector<Rational>(inst.dimension));
    oracle_detail::StepCounter steps{budget.maxSteps};
    return oracle_detail::packRec(inst, 0, loads, 0, steps);
}

// Independent second packing oracle for d = 1: subset-sum feasibility per
// bin plus a minimum-bin-count DP over item subsets.
inline bool brutePackSubsetDp(const Instance& inst, const OracleBudget& budget = {}) {
    inst.checkShape();
    if (inst.dimension != 1)
        throw StructuralError("subset-DP oracle requires dimension 1");
    int n = inst.itemCount();
    if (n > 20) throw BudgetError("subset-DP oracle limited to 20 items");
    (void)budget;
    if (inst.bins == 0) return n == 0;
    std::uint32_t full = (n >= 32) ? 0xffffffffu : ((1u << n) - 1);
    std::vector<char> fits(full + 1, 0);
    std::vector<Rational> sum(full + 1, Rational(0));
    fits[0] = 1;
    for (std::uint32_t m = 1; m <= full; ++m) {
        std::uint32_t low = m & (m - 1);
        int bit = std::countr_zero(m);
        sum[m] = sum[low] + inst.items[bit][0];
        fits[m] = sum[m] <= 1;
    }
    const int INF = 1 << 29;
    std::vector<int> dp(full + 1, INF);
    dp[0] = 0;
    for (std::uint32_t m = 1; m <= full; ++m) {
        // iterate nonempty submasks of m
        for (std::uint32_t s = m; s; s = (s - 1) & m) {
            if (!fits[s] || dp[m ^ s] >= INF) continue;
            dp[m] = std::min(dp[m], dp[m ^ s] + 1);
        }
    }
    return dp[full] <= inst.bins;
}

// Enumerate all perfect matchings of the multigraph, invoking the visitor
// with the chosen edge indices; the visitor returns true to stop early.
inline bool forEachPerfectMatching(
    const MatchingGraph& g, const OracleBudget& budget,
    const std::function<bool(const std::vector<int>&)>& visit) {
    g.check();
    int N = g.nodes;
    if (N > 2 * budget.maxNodes)
        throw BudgetError("matching oracle limited to " +
                          std::to_string(2 * budget.maxNodes) + " nodes");
    if (N % 2) return false;
    std::vector<std::vector<int>> incident(N);
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        incident[g.edges[e].u].push_back(static_cast<int>(e));
        incident[g.edges[e].v].push_back(static_cast<int>(e));
    }
    std::vector<char> used(N, 0);
    std::vector<int> chosen;
    oracle_detail::StepCounter steps{budget.maxSteps};

    // recursive lambda: match the lowest unmatched node
    std::function<bool()> rec = [&]() -> bool {
        int u = 0;
        while (u < N && used[u]) ++u;
        if (u == N) return visit(chosen);
        steps.tick();
        used[u] = 1;
        for (int e : incident[u]) {
            const Edge& ed = g.edges[e];
            int v = ed.u == u ? ed.v : ed.u;
            if (used[v]) continue;
            used[v] = 1;
            chosen.push_back(e);
            if (rec()) return true;
            chosen.pop_back();
            used[v] = 0;
        }
        used[u] = 0;
        return false;
    };
    return rec();
}

inline bool bruteExactMatching(const MatchingGraph& g, long long t,
                               const OracleBudget& budget = {}) {
    return forEachPerfectMatching(g, budget, [&](const std::vector<int>& chosen) {
        long long w = 0;
        for (int e : chosen) w += g.edges[e].weight;
        return w == t;
    });
}

inline std::optional<long long> bruteMaxCostMatching(const MatchingGraph& g,
                                                     long long t,
                                                     const OracleBudget& budget = {}) {
    std::optional<long long> best;
    forEachPerfectMatching(g, budget, [&](const std::vector<int>& chosen) {
        long long w = 0, c = 0;
        for (int e : chosen) {
            w += g.edges[e].weight;
            c += g.edges[e].cost;
        }
        if (w == t && (!best || c > *best)) best = c;
        return false;
    });
    return best;
}

namespace oracle_detail {

inline void knapRec(const Instance& inst, std::size_t item,
                    std::vector<std::vector<Rational>>& loads, int used,
                    Rational& current, Rational& best, StepCounter& steps) {
    if (item == inst.items.size()) {
        if (current > best) best = current;
        return;
    }
    steps.tick();
    // skip the item
    knapRec(inst, item + 1, loads, used, current, best, steps);
    int openable = std::min(used + 1, inst.bins);
    for (int b = 0; b < openable; ++b) {
        bool fits = true;
        for (int j = 0; j < inst.dimension && fits; ++j)
            fits = loads[b][j] + inst.items[item][j] <= 1;
        if (!fits) continue;
        for (int j = 0; j < inst.dimension; ++j) loads[b][j] += inst.items[item][j];
        current += inst.profits[item];
        knapRec(inst, item + 1, loads, std::max(used, b + 1), current, best, steps);
        current -= inst.profits[item];
        for (int j = 0; j < inst.dimension; ++j) loads[b][j] -= inst.items[item][j];
    }
}

}  // namespace oracle_detail

// Maximum total profit over subsets packable into the bins.
inline Rational bruteKnapsack(const Instance& inst, const OracleBudget& budget = {}) {
    inst.checkShape();
    if (inst.profits.size() != inst.items.size())
        throw StructuralError("knapsack oracle needs per-item profits");
    if (inst.itemCount() > budget.maxItems)
        throw BudgetError("knapsack oracle limited to " +
                          std::to_string(budget.maxItems) + " items");
    Rational best = 0, current = 0;
    if (inst.bins == 0) return best;
    std::vector<std::vector<Rational>> loads(inst.bins,
                                             std::vector<Rational>(inst.dimension));
    oracle_detail::StepCounter steps{budget.maxSteps};
    oracle_detail::knapRec(inst, 0, loads, 0, current, best, steps);
    return best;
}

namespace oracle_detail {

inline bool coverRec(const Instance& inst, CoverPred pred, std::size_t item,
                     std::vector<std::vector<Rational>>& loads, int used,
                     StepCounter& steps) {
    if (item == inst.items.size()) {
        if (used < inst.bins) return false;
        for (int b = 0; b < inst.bins; ++b)
            if (!Instance::coversUnit(loads[b], pred)) return false;
        return true;
    }
    steps.tick();
    if (coverRec(inst, pred, item + 1, loads, used, steps)) return true;  // leave out
    int openable = std::min(used + 1, inst.bins);
    for (int b = 0; b < openable; ++b) {
        for (int j = 0; j < inst.dimension; ++j) loads[b][j] += inst.items[item][j];
        if (coverRec(inst, pred, item + 1, loads, std::max(used, b + 1), steps))
            return true;
        for (int j = 0; j < inst.dimension; ++j) loads[b][j] -= inst.items[item][j];
    }
    return false;
}

}  // namespace oracle_detail

// Can `bins` pairwise-disjoint groups of items each satisfy the covering
// predicate? Items may stay unused; bins = 0 is vacuously YES.
inline bool bruteCover(const Instance& inst, CoverPred pred,
                       const OracleBudget& budget = {}) {
    inst.checkShape();
    if (inst.itemCount() > budget.maxItems)
        throw BudgetError("covering oracle limited to " +
                          std::to_string(budget.maxItems) + " items");
    if (inst.bins == 0) return true;
    std::vector<std::vector<Rational>> loads(inst.bins,
                                             std::vector<Rational>(inst.dimension));
    oracle_detail::StepCounter steps{budget.maxSteps};
    return oracle_detail::coverRec(inst, pred, 0, loads, 0, steps);
}

namespace oracle_detail {

// Bipartite augmenting-path matching: can every constraint be assigned its
// own distinct matched edge from its edge set?
inline bool sdrAugment(int c, const std::vector<std::vector<int>>& options,
                       std::vector<int>& repOf, std::vector<char>& visited) {
    for (int e : options[c]) {
        if (visited[e]) continue;
        visited[e] = 1;
        if (repOf[e] < 0 || sdrAugment(repOf[e], options, repOf, visited)) {
            repOf[e] = c;
            return true;
        }
    }
    return false;
}

}  // namespace oracle_detail

inline bool bruteHitting(const HittingInstance& inst, const OracleBudget& budget = {}) {
    MatchingGraph g;
    g.nodes = inst.nodes;
    for (auto [u, v] : inst.edges) g.addEdge(u, v, 0);
    int k = static_cast<int>(inst.constraints.size());
    std::vector<std::vector<char>> inSet(k, std::vector<char>(inst.edges.size(), 0));
    for (int c = 0; c < k; ++c)
        for (int e : inst.constraints[c]) inSet[c][e] = 1;

    return forEachPerfectMatching(g, budget, [&](const std::vector<int>& chosen) {
        // distinct representatives: constraint c may take any chosen slot
        // whose edge lies in its set
        std::vector<std::vector<int>> options(k);
        for (int c = 0; c < k; ++c)
            for (std::size_t s = 0; s < chosen.size(); ++s)
                if (inSet[c][chosen[s]]) options[c].push_back(static_cast<int>(s));
        std::vector<int> repOf(chosen.size(), -1);
        for (int c = 0; c < k; ++c) {
            std::vector<char> visited(chosen.size(), 0);
            if (!oracle_detail::sdrAugment(c, options, repOf, visited)) return false;
        }
        return true;
    });
}

// Truth-table satisfiability over signed 1-based literals.
inline bool bruteSat(const CnfFormula& f) {
    if (f.vars > 24) throw BudgetError("SAT oracle limited to 24 variables");
    for (std::uint32_t assign = 0; assign < (1u << f.vars); ++assign) {
        bool ok = true;
        for (const auto& clause : f.clauses) {
            bool sat = false;
            for (int lit : clause) {
                int v = std::abs(lit) - 1;
                bool val = assign >> v & 1;
                if (lit > 0 ? val : !val) {
                    sat = true;
                    break;
                }
            }
            if (!sat) {
                ok = false;
                break;
            }
        }
        if (ok) return true;
    }
    return false;
}

inline std::optional<int> bruteMinBins(Instance inst, const OracleBudget& budget = {}) {
    for (int b = 0; b <= inst.itemCount(); ++b) {
        inst.bins = b;
        if (brutePack(inst, budget)) return b;
    }
    return std::nullopt;
}

}  // namespace vbp
