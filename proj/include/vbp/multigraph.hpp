#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vbp/errors.hpp"

namespace vbp {

// One edge of a weighted matching multigraph. Parallel edges are allowed
// and meaningful: the engines aggregate them algebraically. Every edge
// carries the additive weight channel used for weight-target queries, an
// optional cost channel used for max-cost queries, and the tag subset it
// encodes (used by the subset-sieve engine).
struct Edge {
    int u = 0;
    int v = 0;
    long long weight = 0;
    long long cost = 0;
    std::uint32_t mask = 0;
};

struct MatchingGraph {
    int nodes = 0;
    std::vector<Edge> edges;

    void addEdge(int u, int v, long long weight, long long cost = 0,
                 std::uint32_t mask = 0) {
        edges.push_back({u, v, weight, cost, mask});
    }

    void check() const {
        if (nodes < 0) throw StructuralError("negative node count");
        for (std::size_t i = 0; i < edges.size(); ++i) {
            const Edge& e = edges[i];
            if (e.u < 0 || e.v < 0 || e.u >= nodes || e.v >= nodes)
                throw StructuralError("edge " + std::to_string(i) +
                                      ": endpoint out of range");
            if (e.u == e.v)
                throw StructuralError("edge " + std::to_string(i) + ": self-loop");
            if (e.weight < 0)
                throw StructuralError("edge " + std::to_string(i) + ": negative weight");
            if (e.cost < 0)
                throw StructuralError("edge " + std::to_string(i) + ": negative cost");
        }
    }
};

}  // namespace vbp
