#pragma once

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "vbp/errors.hpp"

namespace vbp {

// A CNF formula over signed 1-based literals: +v means variable v,
// -v its negation.
struct CnfFormula {
    int vars = 0;
    std::vector<std::vector<int>> clauses;
};

// DIMACS CNF reader. Comments ('c ...') are skipped, the 'p cnf n m'
// header is required, clauses are 0-terminated and may span lines.
inline CnfFormula parseDimacs(std::istream& in) {
    CnfFormula f;
    bool sawHeader = false;
    std::size_t declaredClauses = 0;
    std::vector<int> current;
    std::string line;
    int lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        if (tok == "c") continue;
        if (tok == "p") {
            if (sawHeader)
                throw ParseError("line " + std::to_string(lineNo) + ": second header");
            std::string kind;
            long long n = -1, m = -1;
            if (!(ls >> kind >> n >> m) || kind != "cnf" || n < 0 || m < 0)
                throw ParseError("line " + std::to_string(lineNo) +
                                 ": expected 'p cnf <vars> <clauses>'");
            f.vars = static_cast<int>(n);
            declaredClauses = static_cast<std::size_t>(m);
            sawHeader = true;
            continue;
        }
        if (!sawHeader)
            throw ParseError("line " + std::to_string(lineNo) +
                             ": clause before 'p cnf' header");
        ls.clear();
        ls.str(line);
        long long lit;
        while (ls >> lit) {
            if (lit == 0) {
                f.clauses.push_back(current);
                current.clear();
                continue;
            }
            if (std::abs(lit) > f.vars)
                throw ParseError("line " + std::to_string(lineNo) + ": literal " +
                                 std::to_string(lit) + " exceeds declared variables");
            current.push_back(static_cast<int>(lit));
        }
        if (!ls.eof())
            throw ParseError("line " + std::to_string(lineNo) + ": bad token");
    }
    if (!sawHeader) throw ParseError("missing 'p cnf' header");
    if (!current.empty())
        throw ParseError("last clause is not 0-terminated");
    if (f.clauses.size() != declaredClauses)
        throw ParseError("header declares " + std::to_string(declaredClauses) +
                         " clauses but " + std::to_string(f.clauses.size()) +
                         " were given");
    // A variable appearing with both polarities in one clause makes that
    // clause a tautology; the downstream encoding cannot express it.
    for (std::size_t c = 0; c < f.clauses.size(); ++c) {
        std::vector<int> pos, neg;
        for (int lit : f.clauses[c])
            (lit > 0 ? pos : neg).push_back(std::abs(lit));
        for (int p : pos)
            for (int n : neg)
                if (p == n)
                    throw ParseError("clause " + std::to_string(c) +
                                     " contains variable " + std::to_string(p) +
                                     " with both polarities");
    }
    return f;
}

inline CnfFormula parseDimacsFile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    return parseDimacs(in);
}

}  // namespace vbp
