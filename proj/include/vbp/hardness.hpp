#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "vbp/cnf.hpp"
#include "vbp/errors.hpp"
#include "vbp/instance.hpp"
#include "vbp/io.hpp"
#include "vbp/rational.hpp"

namespace vbp {

// CNF compiled to n+1 two-bin packing instances: instance t is packable
// iff the formula has a satisfying assignment with exactly t true
// variables. Items are [T-item, F-item, one item per variable]; besides
// one dimension per clause there is a separation dimension (T and F both
// sized 1, forcing them into different bins) and a counting dimension
// (the T-bin has room for exactly t variable items).
struct HardInstanceFamily {
    CnfFormula formula;
    std::vector<Instance> instances;  // indexed by t = 0..n
    bool tieBreakAdded = false;
};

inline HardInstanceFamily cnfToPackingFamily(const CnfFormula& f) {
    int n = f.vars;
    int m = static_cast<int>(f.clauses.size());
    if (n < 1) throw StructuralError("the construction needs at least one variable");
    for (std::size_t j = 0; j < f.clauses.size(); ++j)
        for (int lit : f.clauses[j])
            if (lit == 0 || std::abs(lit) > n)
                throw StructuralError("clause " + std::to_string(j) +
                                      " references variable " +
                                      std::to_string(std::abs(lit)));

    std::vector<int> negCount(m, 0);
    // polarity[j][i]: 0 = positive literal, 1 = absent, 2 = negative
    std::vector<std::vector<int>> polarity(m, std::vector<int>(n, 1));
    for (int j = 0; j < m; ++j)
        for (int lit : f.clauses[j]) {
            int v = std::abs(lit) - 1;
            polarity[j][v] = lit > 0 ? 0 : 2;
            if (lit < 0) ++negCount[j];
        }

    Rational half2n = Rational(1) / Rational(Integer(2 * n));
    Rational overN = Rational(1) / Rational(Integer(n));

    HardInstanceFamily fam;
    fam.formula = f;
    for (int t = 0; t <= n; ++t) {
        Instance inst;
        inst.dimension = m + 2;
        inst.bins = 2;
        inst.promiseNone = true;

        std::vector<Rational> T(m + 2), F(m + 2);
        for (int j = 0; j < m; ++j) {
            T[j] = Rational(1) -
                   Rational(Integer(t + negCount[j] - 1)) * half2n;
            F[j] = 0;
        }
        T[m] = 1;
        F[m] = 1;
        T[m + 1] = Rational(Integer(n - t)) * overN;
        F[m + 1] = Rational(Integer(t)) * overN;
        inst.items.push_back(std::move(T));
        inst.items.push_back(std::move(F));

        for (int i = 0; i < n; ++i) {
            std::vector<Rational> v(m + 2);
            for (int j = 0; j < m; ++j)
                v[j] = Rational(Integer(polarity[j][i])) * half2n;
            v[m] = 0;
            v[m + 1] = overN;
            inst.items.push_back(std::move(v));
        }
        fam.instances.push_back(std::move(inst));
    }

    // Identical rows (frequent: variables with equal clause membership)
    // would be rejected by the parser, so when any instance has them the
    // whole family gains one tie-breaking dimension; its per-subset load
    // stays below 1, leaving every packing answer unchanged.
    bool needTieBreak = false;
    for (const auto& inst : fam.instances) {
        for (std::size_t a = 0; a < inst.items.size() && !needTieBreak; ++a)
            for (std::size_t b = a + 1; b < inst.items.size() && !needTieBreak; ++b)
                if (inst.items[a] == inst.items[b]) needTieBreak = true;
        if (needTieBreak) break;
    }
    if (needTieBreak) {
        for (auto& inst : fam.instances) inst = addTieBreakDimension(std::move(inst));
        fam.tieBreakAdded = true;
    }
    return fam;
}

// Exhaustive structural audit of a generated family. For every t, every
// assignment with exactly t true variables, and every clause, it checks
// that the following agree:
//   (1) clause j is satisfied by the assignment,
//   (2) 1 <= alpha + delta   (alpha = true positive occurrences,
//                             delta = false negative occurrences),
//   (3) beta + 2*gamma <= t + n_j - 1   (beta = true absent,
//                                        gamma = true negative),
//   (4) the T-item plus the true variables' items fit in dimension j,
// where (4) reads the emitted instance coordinates, so any mutation of
// the documents breaks the chain. It also re-checks the separation and
// counting dimensions and that false variables always fit beside F.
struct VerifyReport {
    long long assignmentsChecked = 0;
    std::vector<std::string> violations;
    bool clean() const { return violations.empty(); }
};

inline VerifyReport verifyFamily(const HardInstanceFamily& fam) {
    const CnfFormula& f = fam.formula;
    int n = f.vars;
    int m = static_cast<int>(f.clauses.size());
    if (n > 20) throw BudgetError("family verification limited to 20 variables");
    if (static_cast<int>(fam.instances.size()) != n + 1)
        return {0, {"family must hold exactly n+1 instances"}, };

    VerifyReport rep;
    auto complain = [&](int t, std::uint32_t assign, const std::string& what) {
        if (rep.violations.size() < 32)
            rep.violations.push_back("t=" + std::to_string(t) + " assignment=" +
                                     std::to_string(assign) + ": " + what);
    };

    std::vector<int> negCount(m, 0);
    std::vector<std::vector<int>> polarity(m, std::vector<int>(n, 1));
    for (int j = 0; j < m; ++j)
        for (int lit : f.clauses[j]) {
            int v = std::abs(lit) - 1;
            polarity[j][v] = lit > 0 ? 0 : 2;
            if (lit < 0) ++negCount[j];
        }

    for (int t = 0; t <= n; ++t) {
        const Instance& inst = fam.instances[t];
        if (inst.itemCount() != n + 2 || inst.dimension < m + 2 || inst.bins != 2) {
            complain(t, 0, "instance shape is off");
            continue;
        }
        const auto& T = inst.items[0];
        const auto& F = inst.items[1];
        if (T[m] + F[m] <= 1) complain(t, 0, "separation dimension too small");
        if (T[m + 1] != Rational(Integer(n - t)) / Rational(Integer(n)))
            complain(t, 0, "T counting coordinate is off");
        if (F[m + 1] != Rational(Integer(t)) / Rational(Integer(n)))
            complain(t, 0, "F counting coordinate is off");

        for (std::uint32_t assign = 0; assign < (1u << n); ++assign) {
            if (std::popcount(assign) != t) continue;
            ++rep.assignmentsChecked;
            for (int j = 0; j < m; ++j) {
                int alpha = 0, beta = 0, gamma = 0, delta = 0;
                int nj = negCount[j];
                const std::vector<int>& pol = polarity[j];
                for (int v = 0; v < n; ++v) {
                    bool isTrue = assign >> v & 1;
                    if (isTrue && pol[v] == 0) ++alpha;
                    if (isTrue && pol[v] == 1) ++beta;
                    if (isTrue && pol[v] == 2) ++gamma;
                    if (!isTrue && pol[v] == 2) ++delta;
                }
                bool satisfied = false;
                for (int lit : f.clauses[j]) {
                    int v = std::abs(lit) - 1;
                    bool val = assign >> v & 1;
                    if (lit > 0 ? val : !val) satisfied = true;
                }
                bool chain2 = 1 <= alpha + delta;
                bool chain3 = beta + 2 * gamma <= t + nj - 1;

                Rational tBinLoad = inst.items[0][j];
                Rational fBinLoad = inst.items[1][j];
                for (int v = 0; v < n; ++v) {
                    if (assign >> v & 1)
                        tBinLoad += inst.items[2 + v][j];
                    else
                        fBinLoad += inst.items[2 + v][j];
                }
                bool chain4 = tBinLoad <= 1;

                if (satisfied != chain2)
                    complain(t, assign,
                             "clause " + std::to_string(j) +
                                 ": satisfaction disagrees with alpha+delta");
                if (chain2 != chain3)
                    complain(t, assign,
                             "clause " + std::to_string(j) +
                                 ": alpha+delta disagrees with beta+2gamma");
                if (chain3 != chain4)
                    complain(t, assign,
                             "clause " + std::to_string(j) +
                                 ": arithmetic chain disagrees with coordinates");
                if (fBinLoad > 1)
                    complain(t, assign,
                             "clause " + std::to_string(j) + ": F bin overfull");
            }
        }
    }
    return rep;
}

}  // namespace vbp
