#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "vbp/errors.hpp"
#include "vbp/rational.hpp"

namespace vbp {

enum class CoverPred { Any, All };

// A vector packing / covering / knapsack instance over exact rationals.
// Coordinates are normalized so every bin is the unit cube; documents with
// explicit capacities are rescaled at parse time.
struct Instance {
    int dimension = 0;
    std::vector<std::vector<Rational>> items;  // n rows, `dimension` columns
    std::vector<int> small;                    // sorted indices of small items
    int bins = 0;

    std::vector<Rational> profits;  // empty unless a knapsack document
    Rational goalProfit = 0;
    bool hasGoal = false;

    // Set when the document disclaims the few-small-items promise; the
    // solver then treats every item as small.
    bool promiseNone = false;

    // Covering predicate for bin-covering documents (default: any
    // coordinate reaching 1 covers the bin).
    CoverPred coverPred = CoverPred::Any;

    int itemCount() const { return static_cast<int>(items.size()); }
    int smallCount() const { return static_cast<int>(small.size()); }

    std::vector<int> largeIndices() const {
        std::vector<int> out;
        std::vector<char> isSmall(items.size(), 0);
        for (int s : small) isSmall[s] = 1;
        for (int i = 0; i < itemCount(); ++i)
            if (!isSmall[i]) out.push_back(i);
        return out;
    }

    // Sum of the given rows, coordinate-wise.
    std::vector<Rational> load(const std::vector<int>& rows) const {
        std::vector<Rational> sum(dimension, Rational(0));
        for (int r : rows)
            for (int j = 0; j < dimension; ++j) sum[j] += items[r][j];
        return sum;
    }

    static bool fitsUnit(const std::vector<Rational>& loadVec) {
        for (const auto& v : loadVec)
            if (v > 1) return false;
        return true;
    }

    static bool coversUnit(const std::vector<Rational>& loadVec, CoverPred pred) {
        if (pred == CoverPred::Any) {
            for (const auto& v : loadVec)
                if (v >= 1) return true;
            return false;
        }
        for (const auto& v : loadVec)
            if (v < 1) return false;
        return true;
    }

    bool fits(const std::vector<int>& rows) const { return fitsUnit(load(rows)); }

    bool covers(const std::vector<int>& rows, CoverPred pred) const {
        return coversUnit(load(rows), pred);
    }

    // Basic shape checks shared by all entry points. Throws StructuralError.
    void checkShape() const {
        if (dimension < 1) throw StructuralError("dimension must be >= 1");
        if (bins < 0) throw StructuralError("bin count must be >= 0");
        for (std::size_t i = 0; i < items.size(); ++i) {
            if (static_cast<int>(items[i].size()) != dimension)
                throw StructuralError("item " + std::to_string(i) +
                                      " has wrong dimension");
            for (const auto& v : items[i])
                if (v < 0)
                    throw StructuralError("item " + std::to_string(i) +
                                          " has a negative coordinate");
        }
        std::vector<char> seen(items.size(), 0);
        for (int s : small) {
            if (s < 0 || s >= itemCount())
                throw StructuralError("small index out of range: " + std::to_string(s));
            if (seen[s])
                throw StructuralError("duplicate small index: " + std::to_string(s));
            seen[s] = 1;
        }
        if (!profits.empty()) {
            if (profits.size() != items.size())
                throw StructuralError("profits must cover every item");
            for (const auto& p : profits)
                if (p < 0) throw StructuralError("profits must be non-negative");
        }
    }

    // The structural promise the solvers rely on: no three large items fit
    // in one bin together. Returns a violating triple if there is one.
    struct TripleViolation {
        int a = -1, b = -1, c = -1;
        bool found = false;
    };

    TripleViolation findIncompatibleTripleViolation() const {
        TripleViolation v;
        auto large = largeIndices();
        int L = static_cast<int>(large.size());
        for (int x = 0; x < L; ++x)
            for (int y = x + 1; y < L; ++y)
                for (int z = y + 1; z < L; ++z)
                    if (fits({large[x], large[y], large[z]})) {
                        v = {large[x], large[y], large[z], true};
                        return v;
                    }
        return v;
    }

    // Covering-side structural promise: every three large items together
    // cover a bin. Returns a violating triple if there is one.
    TripleViolation findNonCoveringTripleViolation(CoverPred pred) const {
        TripleViolation v;
        auto large = largeIndices();
        int L = static_cast<int>(large.size());
        for (int x = 0; x < L; ++x)
            for (int y = x + 1; y < L; ++y)
                for (int z = y + 1; z < L; ++z)
                    if (!covers({large[x], large[y], large[z]}, pred)) {
                        v = {large[x], large[y], large[z], true};
                        return v;
                    }
        return v;
    }
};

}  // namespace vbp
