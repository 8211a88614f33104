#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "vbp/errors.hpp"
#include "vbp/exact_matching.hpp"
#include "vbp/gf2.hpp"
#include "vbp/multigraph.hpp"
#include "vbp/rng.hpp"
#include "vbp/zeta.hpp"

namespace vbp {

// Gaussian elimination over GF(2^q); no sign bookkeeping is needed in
// characteristic 2.
inline std::uint64_t determinantField(std::vector<std::vector<std::uint64_t>> M,
                                      const GF2Field& F) {
    int n = static_cast<int>(M.size());
    for (const auto& row : M)
        if (static_cast<int>(row.size()) != n)
            throw StructuralError("determinant needs a square matrix");
    std::uint64_t det = 1;
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (M[r][col]) {
                piv = r;
                break;
            }
        if (piv < 0) return 0;
        if (piv != col) std::swap(M[piv], M[col]);
        det = F.mul(det, M[col][col]);
        std::uint64_t invPiv = F.inv(M[col][col]);
        for (int r = col + 1; r < n; ++r) {
            if (!M[r][col]) continue;
            std::uint64_t factor = F.mul(M[r][col], invPiv);
            for (int c = col; c < n; ++c)
                M[r][c] ^= F.mul(factor, M[col][c]);
        }
    }
    return det;
}

// One evaluation of the characteristic-2 inclusion-exclusion sieve
//
//     sum over I subseteq [k] of sqrt(det(B_I)),
//
// where B_I[i][j] aggregates the edges between i and j whose tag masks
// avoid I. Expanding each det as the square of a matching sum (valid for
// symmetric zero-diagonal matrices in characteristic 2) and taking square
// roots (a field automorphism), each perfect matching survives in the
// total once per subset I disjoint from its tag union — an even count,
// i.e. zero, unless the union is all of [k]. The result is therefore a
// random evaluation of a polynomial that vanishes identically iff no
// perfect matching's tags cover [k]; per-edge random factors keep distinct
// matchings on distinct monomials, so a nonzero value certifies YES.
inline std::uint64_t sieveAccumulate(const MatchingGraph& g, int k,
                                     const GF2Field& F, Rng& rng) {
    int N = g.nodes;
    std::size_t nMasks = 1ULL << k;
    std::uint64_t elemMask = F.elementMask();

    std::vector<std::uint64_t> r(k);
    for (int i = 0; i < k; ++i) r[i] = rng.next() & elemMask;

    // rProd[J] = product of r_i over i in J, by lowest-bit extension.
    std::vector<std::uint64_t> rProd(nMasks);
    rProd[0] = 1;
    for (std::size_t m = 1; m < nMasks; ++m)
        rProd[m] = F.mul(rProd[m & (m - 1)], r[std::countr_zero(m)]);

    // Per-pair tables f[J] = sum of s_e * rProd[J] over edges tagged J,
    // then zeta transform: g[S] = sum over edges with tag inside S.
    auto pairIndex = [N](int i, int j) { return i * N + j; };
    std::vector<std::vector<std::uint64_t>> table(
        static_cast<std::size_t>(N) * N);
    for (const Edge& e : g.edges) {
        std::uint64_t s = rng.next() & elemMask;
        int i = std::min(e.u, e.v), j = std::max(e.u, e.v);
        auto& tab = table[pairIndex(i, j)];
        if (tab.empty()) tab.assign(nMasks, 0);
        tab[e.mask] ^= F.mul(s, rProd[e.mask]);
    }
    for (auto& tab : table)
        if (!tab.empty()) zetaTransform(tab);

    std::uint64_t acc = 0;
    std::vector<std::vector<std::uint64_t>> B(N, std::vector<std::uint64_t>(N));
    for (std::size_t I = 0; I < nMasks; ++I) {
        std::size_t comp = (nMasks - 1) ^ I;
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) {
                if (i == j) {
                    B[i][j] = 0;
                    continue;
                }
                const auto& tab = table[pairIndex(std::min(i, j), std::max(i, j))];
                B[i][j] = tab.empty() ? 0 : tab[comp];
            }
        acc ^= F.sqrt(determinantField(B, F));
    }
    return acc;
}

// Monte-Carlo decision of "is there a perfect matching whose edge tags
// partition [k]" for graphs whose fitting tag sets are downward closed
// (then covering [k] and partitioning [k] coincide — shrink overlapping
// tags). One-sided: YES is always correct; NO is wrong with probability
// at most (k+1)N / 2^q < 1/2 per repeat.
inline bool sieveDecide(const MatchingGraph& g, int k, const EngineConfig& cfg) {
    g.check();
    int N = g.nodes;
    if (N % 2) return false;
    if (k < 0 || k > 26) throw BudgetError("sieve tag universe limited to 26");
    for (const Edge& e : g.edges)
        if (k < 32 && e.mask >= (1u << k))
            throw StructuralError("edge tag outside the universe");
    if (N == 0) return k == 0;
    if (static_cast<long long>(N) * N * (1LL << k) > (1LL << 34))
        throw BudgetError("sieve table budget exceeded");

    std::uint64_t need = 2ULL * (k + 1) * N;
    int q = std::max(2, static_cast<int>(std::bit_width(need - 1)));
    if (q > 32) throw BudgetError("field degree beyond 32");
    GF2Field F(q);

    int repeats = cfg.effectiveRepeats(N);
    for (int rep = 0; rep < repeats; ++rep) {
        Rng rng(cfg.seed, static_cast<std::uint64_t>(rep));
        if (sieveAccumulate(g, k, F, rng) != 0) return true;
    }
    return false;
}

}  // namespace vbp
