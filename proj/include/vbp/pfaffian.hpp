#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "vbp/errors.hpp"
#include "vbp/truncated_poly.hpp"

namespace vbp {

using PolyMatrix = std::vector<std::vector<TruncPoly>>;

// Sign of a perfect matching {(i1,j1),...,(in,jn)} of {0..2n-1} with
// i<j in every pair: the sign of the permutation (i1 j1 i2 j2 ...), which
// equals the parity of the number of crossing pairs and does not depend
// on the order the pairs are listed in.
inline int matchingSign(const std::vector<std::pair<int, int>>& pairs) {
    int n2 = static_cast<int>(pairs.size()) * 2;
    std::vector<char> seen(n2, 0);
    for (const auto& [i, j] : pairs) {
        if (i < 0 || j < 0 || i >= n2 || j >= n2 || i >= j || seen[i] || seen[j])
            throw StructuralError("not a perfect matching of the node set");
        seen[i] = seen[j] = 1;
    }
    int crossings = 0;
    for (std::size_t a = 0; a < pairs.size(); ++a)
        for (std::size_t b = a + 1; b < pairs.size(); ++b) {
            auto [ia, ja] = pairs[a];
            auto [ib, jb] = pairs[b];
            if ((ia < ib && ib < ja && ja < jb) || (ib < ia && ia < jb && jb < ja))
                ++crossings;
        }
    return (crossings & 1) ? -1 : 1;
}

namespace detail {

inline void pfaffianBruteRec(const PolyMatrix& A, std::vector<char>& used,
                             std::vector<std::pair<int, int>>& pairs,
                             TruncPoly& acc, TruncPoly& term, TruncPoly& tmp) {
    int N = static_cast<int>(A.size());
    int i = 0;
    while (i < N && used[i]) ++i;
    if (i == N) {
        if (matchingSign(pairs) > 0)
            acc.add(term);
        else {
            tmp = term;
            tmp.negate();
            acc.add(tmp);
        }
        return;
    }
    used[i] = 1;
    for (int j = i + 1; j < N; ++j) {
        if (used[j] || A[i][j].isZero()) continue;
        used[j] = 1;
        pairs.emplace_back(i, j);
        TruncPoly save = term;
        TruncPoly prod(term.cap());
        prod.addMul(term, A[i][j]);
        term = std::move(prod);
        pfaffianBruteRec(A, used, pairs, acc, term, tmp);
        term = std::move(save);
        pairs.pop_back();
        used[j] = 0;
    }
    used[i] = 0;
}

}  // namespace detail

// Reference Pfaffian: direct sum over all perfect matchings. Exponential;
// guarded for use as a test oracle only.
inline TruncPoly pfaffianBruteforce(const PolyMatrix& A) {
    int N = static_cast<int>(A.size());
    if (N % 2) throw StructuralError("Pfaffian needs an even matrix size");
    if (N > 12) throw BudgetError("reference Pfaffian limited to 12 nodes");
    int cap = N == 0 ? 0 : A[0][0].cap();
    TruncPoly acc(cap);
    if (N == 0) {
        acc[0] = 1;
        return acc;
    }
    std::vector<char> used(N, 0);
    std::vector<std::pair<int, int>> pairs;
    TruncPoly term(cap), tmp(cap);
    term[0] = 1;
    detail::pfaffianBruteRec(A, used, pairs, acc, term, tmp);
    return acc;
}

// ---------------------------------------------------------------------------
// Division-free Pfaffian via ordered closed-walk ("clow") sequences.
//
// Vertices are grouped into super-nodes {2h, 2h+1}. Walk steps use the
// sign-adjusted matrix
//
//     B[u][w] = -A[u][w] if w is odd, else A[u][w],
//
// and a clow with head h starts at vertex 2h+1, repeatedly enters a vertex
// w whose super-node exceeds h (the head stays the strict minimum) and
// re-exits at w's partner w^1, and finally closes into vertex 2h. Each
// closed clow contributes a factor -1. Summing over all sequences of
// clows with strictly increasing heads and exactly N/2 super-node visits
// yields the Pfaffian: sequences that are not vertex-disjoint unions of
// cycles cancel in pairs (splitting/merging at the first repeated visit,
// or reversing a segment between the two traversals of a partner pair,
// which always flips the sign under the B weights).
//
// The layered sum below runs in O(N^3) states and O(N^4) ring products,
// keeping only two layers of N^2/2 ring elements alive.
// ---------------------------------------------------------------------------
inline TruncPoly pfaffian(const PolyMatrix& A) {
    int N = static_cast<int>(A.size());
    if (N % 2) throw StructuralError("Pfaffian needs an even matrix size");
    int cap = N == 0 ? 0 : A[0][0].cap();
    TruncPoly result(cap);
    if (N == 0) {
        result[0] = 1;
        return result;
    }
    for (int i = 0; i < N; ++i)
        if (static_cast<int>(A[i].size()) != N)
            throw StructuralError("matrix is not square");

    int half = N / 2;

    PolyMatrix B(N, std::vector<TruncPoly>(N, TruncPoly(cap)));
    std::size_t entryBits = 1;
    for (int u = 0; u < N; ++u)
        for (int w = 0; w < N; ++w) {
            if (u == w) continue;
            B[u][w] = A[u][w];
            if (w & 1) B[u][w].negate();
            entryBits = std::max(entryBits, B[u][w].maxBits());
        }

    // Coefficient growth bound: a layer-L state is a sum of products of at
    // most L+1 entries, with at most (N*(cap+1))^(L+1) terms. Exceeding
    // this by a wide margin can only mean a logic error, so it is checked.
    auto layerBitBound = [&](int layer) {
        std::size_t logTerms = 1;
        std::size_t q = static_cast<std::size_t>(N) * (cap + 2);
        while (q > 1) {
            q >>= 1;
            ++logTerms;
        }
        return static_cast<std::size_t>(layer + 1) * (entryBits + logTerms) + 64;
    };

    // layer[h][u]: open clow with head h currently exiting vertex u.
    auto makeLayer = [&] {
        return PolyMatrix(half, std::vector<TruncPoly>(N, TruncPoly(cap)));
    };
    PolyMatrix cur = makeLayer(), next = makeLayer();
    for (int h = 0; h < half; ++h) cur[h][2 * h + 1][0] = 1;

    TruncPoly closed(cap);
    for (int layer = 1; layer <= half; ++layer) {
        bool last = (layer == half);
        if (!last)
            for (auto& row : next)
                for (auto& p : row) p.clear();
        for (int h = 0; h < half; ++h) {
            for (int u = 0; u < N; ++u) {
                const TruncPoly& f = cur[h][u];
                if (f.isZero()) continue;
                if (f.maxBits() > layerBitBound(layer))
                    throw std::logic_error("coefficient growth exceeds bound");
                // Close the clow into 2h (factor -1), then either finish
                // the sequence or open a new clow with a larger head.
                if (!B[u][2 * h].isZero()) {
                    if (last) {
                        result.subMul(f, B[u][2 * h]);
                    } else if (h + 1 < half) {
                        closed.clear();
                        closed.addMul(f, B[u][2 * h]);
                        for (int h2 = h + 1; h2 < half; ++h2)
                            next[h2][2 * h2 + 1].sub(closed);
                    }
                }
                if (last) continue;
                // Extend through an interior vertex w (super-node above h),
                // leaving at w's partner.
                for (int w = 0; w < N; ++w) {
                    if ((w >> 1) <= h || B[u][w].isZero()) continue;
                    next[h][w ^ 1].addMul(f, B[u][w]);
                }
            }
        }
        std::swap(cur, next);
    }
    return result;
}

// Coefficient of x^t in pf(A). Validates skew-symmetry (zero diagonal,
// A[j][i] = -A[i][j]) before running the layered sum; the entries must
// already be truncated at degree >= t.
inline Integer pfaffianCoefficient(const PolyMatrix& A, int t) {
    int N = static_cast<int>(A.size());
    for (int i = 0; i < N; ++i) {
        if (static_cast<int>(A[i].size()) != N)
            throw StructuralError("matrix is not square");
        if (!A[i][i].isZero()) throw StructuralError("nonzero diagonal entry");
        for (int j = i + 1; j < N; ++j) {
            TruncPoly neg = A[j][i];
            neg.negate();
            if (!(neg == A[i][j]))
                throw StructuralError("matrix is not skew-symmetric");
        }
    }
    if (N > 0 && (t < 0 || t > A[0][0].cap()))
        throw StructuralError("coefficient index beyond the degree cap");
    TruncPoly p = pfaffian(A);
    return t <= p.cap() ? p[t] : Integer(0);
}

}  // namespace vbp
