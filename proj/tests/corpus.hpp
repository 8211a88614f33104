#pragma once

// Shared helpers and size knobs for the test suites. All randomness is
// seeded so every run sees the same corpus; the knobs below are tuned for
// a single-core CI box.

#include <cstdint>
#include <vector>

#include "vbp/cnf.hpp"
#include "vbp/instance.hpp"
#include "vbp/io.hpp"
#include "vbp/multigraph.hpp"
#include "vbp/pfaffian.hpp"
#include "vbp/rational.hpp"
#include "vbp/rng.hpp"
#include "vbp/truncated_poly.hpp"

namespace corpus {

using vbp::CnfFormula;
using vbp::HittingInstance;
using vbp::Instance;
using vbp::Integer;
using vbp::MatchingGraph;
using vbp::PolyMatrix;
using vbp::Rational;
using vbp::Rng;
using vbp::TruncPoly;

// --- suite size knobs (single-core budget) ---------------------------------
inline constexpr int kPfaffianRandomTrials = 120;   // per matrix size
inline constexpr int kPfaffianSquareTrials = 60;    // pf^2 == det checks
inline constexpr int kPackAgreementInstances = 300; // solver vs oracle corpus
inline constexpr int kCrossEngineInstances = 300;   // same corpus, both engines
inline constexpr int kAppAgreementInstances = 150;  // per sibling application
inline constexpr int kHardnessFormulas = 50;        // CNF equivalence corpus
inline constexpr std::uint64_t kBaseSeed = 0x5eed0001ULL;

// Random skew-symmetric matrix over integer polynomials with the given
// degree cap; entries are zero with probability zeroPct/100.
inline PolyMatrix randomSkewPolyMatrix(Rng& rng, int n, int cap, int coeffBound,
                                       int zeroPct = 30) {
    PolyMatrix A(n, std::vector<TruncPoly>(n, TruncPoly(cap)));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if (rng.below(100) < static_cast<std::uint64_t>(zeroPct)) continue;
            for (int d = 0; d <= cap; ++d) {
                if (rng.below(100) < 40) continue;
                long c = static_cast<long>(rng.range(1, coeffBound));
                if (rng.coin()) c = -c;
                A[i][j][d] = c;
                A[j][i][d] = -c;
            }
        }
    return A;
}

inline Rational frac(long num, long den) {
    Rational r{Integer(num)};
    r /= Rational{Integer(den)};
    return r;
}

// A random packing-style instance whose large items are 3-incompatible by
// construction: every large item's first coordinate is at least 5/12, so
// three of them always exceed one bin. Coordinates use denominators <= 12.
inline Instance randomPackingInstance(Rng& rng, int maxLarge = 4, int maxK = 4,
                                      int maxD = 3, int maxBins = 3) {
    Instance inst;
    inst.dimension = static_cast<int>(rng.range(1, maxD));
    int L = static_cast<int>(rng.below(maxLarge + 1));
    int k = static_cast<int>(rng.below(maxK + 1));
    inst.bins = static_cast<int>(rng.range(1, maxBins));
    for (int i = 0; i < L; ++i) {
        std::vector<Rational> row(inst.dimension);
        row[0] = frac(static_cast<long>(rng.range(5, 12)), 12);
        for (int j = 1; j < inst.dimension; ++j)
            row[j] = frac(static_cast<long>(rng.below(13)), 12);
        inst.items.push_back(std::move(row));
    }
    for (int i = 0; i < k; ++i) {
        std::vector<Rational> row(inst.dimension);
        for (int j = 0; j < inst.dimension; ++j) {
            long den = static_cast<long>(rng.range(1, 12));
            row[j] = frac(static_cast<long>(rng.below(den + 1)), den);
        }
        inst.items.push_back(std::move(row));
        inst.small.push_back(L + i);
    }
    return inst;
}

// Covering variant: every large item has all coordinates >= 5/12, making
// any three large items cover under both built-in predicates.
inline Instance randomCoveringInstance(Rng& rng, int maxLarge = 5, int maxK = 3,
                                       int maxD = 2, int maxBins = 3) {
    Instance inst;
    inst.dimension = static_cast<int>(rng.range(1, maxD));
    int L = static_cast<int>(rng.below(maxLarge + 1));
    int k = static_cast<int>(rng.below(maxK + 1));
    inst.bins = static_cast<int>(rng.range(1, maxBins));
    for (int i = 0; i < L; ++i) {
        std::vector<Rational> row(inst.dimension);
        for (int j = 0; j < inst.dimension; ++j)
            row[j] = frac(static_cast<long>(rng.range(5, 12)), 12);
        inst.items.push_back(std::move(row));
    }
    for (int i = 0; i < k; ++i) {
        std::vector<Rational> row(inst.dimension);
        for (int j = 0; j < inst.dimension; ++j) {
            long den = static_cast<long>(rng.range(1, 12));
            row[j] = frac(static_cast<long>(rng.below(den + 1)), den);
        }
        inst.items.push_back(std::move(row));
        inst.small.push_back(L + i);
    }
    return inst;
}

inline Instance randomKnapsackInstance(Rng& rng, int maxLarge = 4, int maxK = 3,
                                       int maxD = 2, int maxBins = 2,
                                       int maxProfit = 9) {
    Instance inst = randomPackingInstance(rng, maxLarge, maxK, maxD, maxBins);
    long long total = 0;
    for (int i = 0; i < inst.itemCount(); ++i) {
        long p = static_cast<long>(rng.range(1, maxProfit));
        inst.profits.push_back(Rational(Integer(p)));
        total += p;
    }
    inst.hasGoal = true;
    inst.goalProfit =
        Rational(Integer(static_cast<long>(rng.range(1, std::max(total, 1LL)))));
    return inst;
}

// Random multigraph with small integer weights (and optional costs).
inline MatchingGraph randomMatchingGraph(Rng& rng, int maxNodes = 8,
                                         int maxWeight = 6, int maxCost = 0,
                                         int edgeFactor = 2) {
    MatchingGraph g;
    g.nodes = 2 * static_cast<int>(rng.range(1, maxNodes / 2));
    int m = static_cast<int>(rng.range(1, edgeFactor * g.nodes));
    for (int e = 0; e < m; ++e) {
        int u = static_cast<int>(rng.below(g.nodes));
        int v = static_cast<int>(rng.below(g.nodes));
        if (u == v) continue;
        long long w = static_cast<long long>(rng.below(maxWeight + 1));
        long long c = maxCost > 0 ? static_cast<long long>(rng.below(maxCost + 1)) : 0;
        g.addEdge(u, v, w, c);
    }
    return g;
}

inline HittingInstance randomHittingInstance(Rng& rng, int maxNodes = 8,
                                             int maxK = 3) {
    HittingInstance h;
    h.nodes = 2 * static_cast<int>(rng.range(1, maxNodes / 2));
    int m = static_cast<int>(rng.range(1, 2 * h.nodes));
    for (int e = 0; e < m; ++e) {
        int u = static_cast<int>(rng.below(h.nodes));
        int v = static_cast<int>(rng.below(h.nodes));
        if (u == v) continue;
        h.edges.emplace_back(u, v);
    }
    int k = h.edges.empty() ? 0 : static_cast<int>(rng.below(maxK + 1));
    for (int i = 0; i < k; ++i) {
        std::vector<int> set;
        for (std::size_t e = 0; e < h.edges.size(); ++e)
            if (rng.coin()) set.push_back(static_cast<int>(e));
        if (set.empty()) set.push_back(static_cast<int>(rng.below(h.edges.size())));
        h.constraints.push_back(std::move(set));
    }
    return h;
}

inline CnfFormula randomCnf(Rng& rng, int maxVars = 6, int maxClauses = 8) {
    CnfFormula f;
    f.vars = static_cast<int>(rng.range(1, maxVars));
    int m = static_cast<int>(rng.below(maxClauses + 1));
    for (int j = 0; j < m; ++j) {
        std::vector<int> clause;
        for (int v = 1; v <= f.vars; ++v) {
            std::uint64_t roll = rng.below(4);
            if (roll == 0) clause.push_back(v);
            if (roll == 1) clause.push_back(-v);
        }
        f.clauses.push_back(std::move(clause));
    }
    return f;
}

// Exact determinant by Gaussian elimination over rationals (test oracle).
inline Rational detRational(const std::vector<std::vector<Rational>>& M) {
    int n = static_cast<int>(M.size());
    auto a = M;
    Rational det = 1;
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (a[r][col] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) return Rational(0);
        if (piv != col) {
            std::swap(a[piv], a[col]);
            det = -det;
        }
        det *= a[col][col];
        Rational inv = 1 / a[col][col];
        for (int r = col + 1; r < n; ++r) {
            if (a[r][col] == 0) continue;
            Rational factor = a[r][col] * inv;
            for (int c = col; c < n; ++c) a[r][c] -= factor * a[col][c];
        }
    }
    return det;
}

}  // namespace corpus
