#pragma once

#include <stdexcept>
#include <string>

namespace vbp {

// Malformed input documents (bad JSON, bad rationals, bad references).
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Structurally invalid instances (violated promises, inconsistent sizes).
struct StructuralError : std::runtime_error {
    explicit StructuralError(const std::string& what) : std::runtime_error(what) {}
};

// A requested computation exceeds a hard safety budget (e.g. brute-force
// oracles asked to enumerate an astronomically large search space).
struct BudgetError : std::runtime_error {
    explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace vbp
