#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "vbp/errors.hpp"
#include "vbp/multigraph.hpp"
#include "vbp/pfaffian.hpp"
#include "vbp/rng.hpp"
#include "vbp/truncated_poly.hpp"

namespace vbp {

enum class Engine { Pfaffian, Gf2Sieve };

struct EngineConfig {
    std::uint64_t seed = 0;
    // 0 selects the default max(1, ceil(2*log2(N+2))); the false-NO
    // probability is at most 2^-repeats.
    int repeats = 0;
    Engine engine = Engine::Pfaffian;
    // Hard budgets so absurd inputs fail fast instead of thrashing.
    int maxPolyDegree = 1 << 20;
    long long maxEntryBits = 1LL << 24;

    int effectiveRepeats(int nodes) const {
        if (repeats > 0) return repeats;
        std::uint64_t sq = static_cast<std::uint64_t>(nodes + 2) * (nodes + 2);
        int r = std::bit_width(sq - 1);
        return r < 1 ? 1 : r;
    }
};

namespace detail {

// Per-repeat random pair costs, uniform in {1, .., 2*C(N,2)}; the
// isolation lemma makes the extreme-cost matching unique with
// probability >= 1/2.
inline std::vector<std::vector<int>> drawPairCosts(int N, Rng& rng) {
    std::vector<std::vector<int>> c(N, std::vector<int>(N, 0));
    long long lim = static_cast<long long>(N) * (N - 1);
    for (int i = 0; i < N; ++i)
        for (int j = i + 1; j < N; ++j)
            c[i][j] = static_cast<int>(rng.range(1, static_cast<std::uint64_t>(lim)));
    return c;
}

// lambda = 2 m^N: strictly more than twice the number of ways any fixed
// cost exponent can be realized, so lambda-adic digits never carry into
// each other and a uniquely-achieved exponent survives as a nonzero digit.
inline Integer lambdaFor(std::size_t m, int N) {
    Integer lam;
    mpz_ui_pow_ui(lam.get_mpz_t(), static_cast<unsigned long>(m),
                  static_cast<unsigned long>(N));
    return lam * 2;
}

// Edges participating in a weight-t matching can individually weigh at
// most t (weights are non-negative).
inline std::vector<Edge> usableEdges(const MatchingGraph& g, long long t) {
    std::vector<Edge> out;
    for (const Edge& e : g.edges)
        if (e.weight <= t) out.push_back(e);
    return out;
}

inline bool everyNodeCovered(int N, const std::vector<Edge>& edges) {
    std::vector<char> deg(N, 0);
    for (const Edge& e : edges) deg[e.u] = deg[e.v] = 1;
    for (int i = 0; i < N; ++i)
        if (!deg[i]) return false;
    return true;
}

}  // namespace detail

// Monte-Carlo test for a perfect matching of total weight exactly t.
// YES answers are always correct: the coefficient of x^t in pf(A) is a sum
// of lambda-powers over weight-t matchings, and the lowest cost achieved by
// exactly one matching contributes a digit that nothing else can cancel.
// NO answers are wrong with probability at most 2^-repeats.
inline bool exactMatchingDecide(const MatchingGraph& g, long long t,
                                const EngineConfig& cfg) {
    g.check();
    int N = g.nodes;
    if (N % 2) return false;
    if (N == 0) return t == 0;
    if (t < 0) return false;
    if (t > cfg.maxPolyDegree)
        throw BudgetError("weight target " + std::to_string(t) +
                          " exceeds the polynomial degree budget");
    auto edges = detail::usableEdges(g, t);
    if (!detail::everyNodeCovered(N, edges)) return false;

    int cap = static_cast<int>(t);
    Integer lam = detail::lambdaFor(edges.size(), N);

    // Pair polynomials: bucket parallel edge weights once (repeat-invariant),
    // then per repeat scale each bucket by lambda^c(pair).
    PolyMatrix base(N, std::vector<TruncPoly>(N, TruncPoly(cap)));
    for (const Edge& e : edges) {
        int i = std::min(e.u, e.v), j = std::max(e.u, e.v);
        base[i][j][static_cast<int>(e.weight)] += 1;
    }
    std::vector<Integer> lamPow{Integer(1)};
    auto lamTo = [&](int c) -> const Integer& {
        while (static_cast<int>(lamPow.size()) <= c)
            lamPow.push_back(lamPow.back() * lam);
        return lamPow[c];
    };

    int repeats = cfg.effectiveRepeats(N);
    for (int rep = 0; rep < repeats; ++rep) {
        Rng rng(cfg.seed, static_cast<std::uint64_t>(rep));
        auto cost = detail::drawPairCosts(N, rng);

        PolyMatrix A(N, std::vector<TruncPoly>(N, TruncPoly(cap)));
        for (int i = 0; i < N; ++i)
            for (int j = i + 1; j < N; ++j) {
                if (base[i][j].isZero()) continue;
                const Integer& scale = lamTo(cost[i][j]);
                for (int w = 0; w <= cap; ++w)
                    if (base[i][j][w] != 0) A[i][j][w] = base[i][j][w] * scale;
                A[j][i] = A[i][j];
                A[j][i].negate();
            }

        if (pfaffianCoefficient(A, cap) != 0) return true;
    }
    return false;
}

// Maximum total edge cost over perfect matchings of weight exactly t, or
// absent if none was seen. Input costs ride the high lambda-adic digits
// (radix lambda^(1+maxIsolationCost)) so they never mix with the isolation
// digits; the top digit position of the coefficient, divided by that
// radix exponent, can never exceed the true maximum and equals it when
// isolation succeeds. stopAt, when given, short-circuits once the lower
// bound reaches it (the caller only needs "max >= stopAt").
inline std::optional<long long> exactMatchingMaxCost(
    const MatchingGraph& g, long long t, const EngineConfig& cfg,
    std::optional<long long> stopAt = std::nullopt) {
    g.check();
    int N = g.nodes;
    if (N % 2) return std::nullopt;
    if (N == 0) return t == 0 ? std::make_optional(0LL) : std::nullopt;
    if (t < 0) return std::nullopt;
    if (t > cfg.maxPolyDegree)
        throw BudgetError("weight target " + std::to_string(t) +
                          " exceeds the polynomial degree budget");
    auto edges = detail::usableEdges(g, t);
    if (!detail::everyNodeCovered(N, edges)) return std::nullopt;

    int cap = static_cast<int>(t);
    Integer lam = detail::lambdaFor(edges.size(), N);
    long long maxIsolation =
        static_cast<long long>(N) / 2 * N * (N - 1);  // N/2 pairs, cost <= N(N-1)
    long long radixExp = 1 + maxIsolation;
    std::size_t lamBits = mpz_sizeinbase(lam.get_mpz_t(), 2);
    for (const Edge& e : edges) {
        long long chi = radixExp * e.cost + 1;
        if (static_cast<long long>(lamBits) * chi > cfg.maxEntryBits)
            throw BudgetError("cost exponents exceed the coefficient budget");
    }

    // Repeat-invariant part of the matrix: cost digits in the high radix,
    // bucketed by edge weight. Per repeat only the lambda^c(pair) scaling
    // changes.
    Integer lamRadix;
    mpz_pow_ui(lamRadix.get_mpz_t(), lam.get_mpz_t(),
               static_cast<unsigned long>(radixExp));
    std::map<long long, Integer> radixPow{{0, Integer(1)}};
    auto radixTo = [&](long long c) -> const Integer& {
        auto it = radixPow.find(c);
        if (it == radixPow.end()) {
            Integer p;
            mpz_pow_ui(p.get_mpz_t(), lamRadix.get_mpz_t(),
                       static_cast<unsigned long>(c));
            it = radixPow.emplace(c, std::move(p)).first;
        }
        return it->second;
    };
    PolyMatrix base(N, std::vector<TruncPoly>(N, TruncPoly(cap)));
    for (const Edge& e : edges) {
        int i = std::min(e.u, e.v), j = std::max(e.u, e.v);
        base[i][j][static_cast<int>(e.weight)] += radixTo(e.cost);
    }
    std::vector<Integer> lamPow{Integer(1)};
    auto lamTo = [&](int c) -> const Integer& {
        while (static_cast<int>(lamPow.size()) <= c)
            lamPow.push_back(lamPow.back() * lam);
        return lamPow[c];
    };

    std::optional<long long> best;
    int repeats = cfg.effectiveRepeats(N);
    for (int rep = 0; rep < repeats; ++rep) {
        Rng rng(cfg.seed, static_cast<std::uint64_t>(rep));
        auto cost = detail::drawPairCosts(N, rng);

        PolyMatrix A(N, std::vector<TruncPoly>(N, TruncPoly(cap)));
        for (int i = 0; i < N; ++i)
            for (int j = i + 1; j < N; ++j) {
                if (base[i][j].isZero()) continue;
                const Integer& scale = lamTo(cost[i][j]);
                for (int w = 0; w <= cap; ++w)
                    if (base[i][j][w] != 0) A[i][j][w] = base[i][j][w] * scale;
                A[j][i] = A[i][j];
                A[j][i].negate();
            }

        Integer coeff = pfaffianCoefficient(A, cap);
        if (coeff == 0) continue;
        mpz_abs(coeff.get_mpz_t(), coeff.get_mpz_t());
        long long topDigit = 0;
        while (coeff >= lam) {
            coeff /= lam;
            ++topDigit;
        }
        long long found = topDigit / radixExp;
        if (!best || found > *best) best = found;
        if (stopAt && best && *best >= *stopAt) return best;
    }
    return best;
}

}  // namespace vbp
