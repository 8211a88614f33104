#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "vbp/errors.hpp"
#include "vbp/instance.hpp"
#include "vbp/rational.hpp"

namespace vbp {

using Json = nlohmann::ordered_json;

// A perfect-matching-with-side-constraints document: an undirected graph
// plus constraint sets of edge indices, each of which must be hit by the
// matching at least once.
struct HittingInstance {
    int nodes = 0;
    std::vector<std::pair<int, int>> edges;
    std::vector<std::vector<int>> constraints;
};

namespace detail {

// Numbers in documents must be exact: JSON strings ("1/3", "0.25") or
// integers. Raw JSON floats are rejected since they already went through
// binary rounding before we could see them.
inline Rational jsonToRational(const Json& v, const std::string& where) {
    if (v.is_string()) return parseRational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(Integer(v.get<long>()));
    if (v.is_number_unsigned()) {
        std::ostringstream os;
        os << v.get<unsigned long long>();
        return Rational(Integer(os.str()));
    }
    if (v.is_number_float())
        throw ParseError(where + ": write non-integer numbers as strings "
                                 "(e.g. \"1/4\" or \"0.25\") to keep them exact");
    throw ParseError(where + ": expected a number");
}

inline Json loadJsonFile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    Json doc;
    try {
        doc = Json::parse(in);
    } catch (const std::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    return doc;
}

}  // namespace detail

inline Instance parseInstance(const Json& doc, bool allowDuplicates = false) {
    if (!doc.is_object()) throw ParseError("instance document must be a JSON object");
    Instance inst;
    if (!doc.contains("dimension") || !doc["dimension"].is_number_integer())
        throw ParseError("missing integer field 'dimension'");
    inst.dimension = doc["dimension"].get<int>();
    if (!doc.contains("items") || !doc["items"].is_array())
        throw ParseError("missing array field 'items'");
    for (std::size_t i = 0; i < doc["items"].size(); ++i) {
        const auto& row = doc["items"][i];
        if (!row.is_array())
            throw ParseError("items[" + std::to_string(i) + "] must be an array");
        std::vector<Rational> coords;
        for (std::size_t j = 0; j < row.size(); ++j)
            coords.push_back(detail::jsonToRational(
                row[j], "items[" + std::to_string(i) + "][" + std::to_string(j) + "]"));
        inst.items.push_back(std::move(coords));
    }
    if (doc.contains("small")) {
        if (!doc["small"].is_array()) throw ParseError("'small' must be an array");
        for (const auto& s : doc["small"]) {
            if (!s.is_number_integer()) throw ParseError("'small' entries must be integers");
            inst.small.push_back(s.get<int>());
        }
        std::sort(inst.small.begin(), inst.small.end());
    }
    if (doc.contains("bins")) {
        if (!doc["bins"].is_number_integer()) throw ParseError("'bins' must be an integer");
        inst.bins = doc["bins"].get<int>();
    }
    if (doc.contains("profits")) {
        if (!doc["profits"].is_array()) throw ParseError("'profits' must be an array");
        for (std::size_t i = 0; i < doc["profits"].size(); ++i)
            inst.profits.push_back(detail::jsonToRational(
                doc["profits"][i], "profits[" + std::to_string(i) + "]"));
    }
    if (doc.contains("goal_profit")) {
        inst.goalProfit = detail::jsonToRational(doc["goal_profit"], "goal_profit");
        inst.hasGoal = true;
    }
    if (doc.contains("promise")) {
        if (!doc["promise"].is_string() || doc["promise"].get<std::string>() != "none")
            throw ParseError("'promise' may only take the value \"none\"");
        inst.promiseNone = true;
    }
    if (doc.contains("covering")) {
        if (!doc["covering"].is_string())
            throw ParseError("'covering' must be \"any\" or \"all\"");
        std::string pred = doc["covering"].get<std::string>();
        if (pred == "any")
            inst.coverPred = CoverPred::Any;
        else if (pred == "all")
            inst.coverPred = CoverPred::All;
        else
            throw ParseError("'covering' must be \"any\" or \"all\"");
    }
    if (doc.contains("capacities")) {
        if (!doc["capacities"].is_array() ||
            static_cast<int>(doc["capacities"].size()) != inst.dimension)
            throw ParseError("'capacities' must list one value per dimension");
        std::vector<Rational> caps;
        for (std::size_t j = 0; j < doc["capacities"].size(); ++j)
            caps.push_back(detail::jsonToRational(
                doc["capacities"][j], "capacities[" + std::to_string(j) + "]"));
        for (const auto& c : caps)
            if (c <= 0) throw ParseError("capacities must be positive");
        for (auto& row : inst.items)
            for (int j = 0; j < inst.dimension; ++j) row[j] /= caps[j];
    }
    try {
        inst.checkShape();
    } catch (const StructuralError& e) {
        throw ParseError(e.what());
    }
    // Identical item vectors break the tie-breaking assumptions downstream;
    // reject them here and point at the preprocessing flag that fixes them.
    if (!allowDuplicates)
        for (std::size_t i = 0; i < inst.items.size(); ++i)
            for (std::size_t j = i + 1; j < inst.items.size(); ++j)
                if (inst.items[i] == inst.items[j])
                    throw ParseError(
                        "items[" + std::to_string(i) + "] and items[" +
                        std::to_string(j) +
                        "] are identical; rerun with --break-ties to append "
                        "a tie-breaking dimension");
    return inst;
}

inline Instance parseInstanceFile(const std::string& path,
                                  bool allowDuplicates = false) {
    return parseInstance(detail::loadJsonFile(path), allowDuplicates);
}

inline Json instanceToJson(const Instance& inst) {
    Json doc;
    doc["dimension"] = inst.dimension;
    Json items = Json::array();
    for (const auto& row : inst.items) {
        Json r = Json::array();
        for (const auto& v : row) r.push_back(formatRational(v));
        items.push_back(std::move(r));
    }
    doc["items"] = std::move(items);
    doc["small"] = inst.small;
    doc["bins"] = inst.bins;
    if (!inst.profits.empty()) {
        Json p = Json::array();
        for (const auto& v : inst.profits) p.push_back(formatRational(v));
        doc["profits"] = std::move(p);
    }
    if (inst.hasGoal) doc["goal_profit"] = formatRational(inst.goalProfit);
    if (inst.promiseNone) doc["promise"] = "none";
    if (inst.coverPred == CoverPred::All) doc["covering"] = "all";
    return doc;
}

// Preprocessing for instances with identical items: append one dimension
// where item i gets the unique coordinate i/(n(n+1)). The added loads of
// any subset total under 1, so feasibility is unchanged.
inline Instance addTieBreakDimension(Instance inst) {
    int n = inst.itemCount();
    Rational denom = Rational(Integer(n)) * Rational(Integer(n + 1));
    for (int i = 0; i < n; ++i)
        inst.items[i].push_back(Rational(Integer(i)) / denom);
    inst.dimension += 1;
    return inst;
}

inline HittingInstance parseHitting(const Json& doc) {
    if (!doc.is_object()) throw ParseError("graph document must be a JSON object");
    HittingInstance h;
    if (!doc.contains("nodes") || !doc["nodes"].is_number_integer())
        throw ParseError("missing integer field 'nodes'");
    h.nodes = doc["nodes"].get<int>();
    if (h.nodes < 0) throw ParseError("'nodes' must be >= 0");
    if (!doc.contains("edges") || !doc["edges"].is_array())
        throw ParseError("missing array field 'edges'");
    for (std::size_t i = 0; i < doc["edges"].size(); ++i) {
        const auto& e = doc["edges"][i];
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
            !e[1].is_number_integer())
            throw ParseError("edges[" + std::to_string(i) + "] must be [u, v]");
        int u = e[0].get<int>(), v = e[1].get<int>();
        if (u < 0 || v < 0 || u >= h.nodes || v >= h.nodes)
            throw ParseError("edges[" + std::to_string(i) + "]: endpoint out of range");
        if (u == v) throw ParseError("edges[" + std::to_string(i) + "]: self-loop");
        h.edges.emplace_back(u, v);
    }
    if (doc.contains("constraints")) {
        if (!doc["constraints"].is_array()) throw ParseError("'constraints' must be an array");
        for (std::size_t i = 0; i < doc["constraints"].size(); ++i) {
            const auto& c = doc["constraints"][i];
            if (!c.is_array())
                throw ParseError("constraints[" + std::to_string(i) + "] must be an array");
            if (c.empty())
                throw ParseError("constraints[" + std::to_string(i) + "] is empty");
            std::vector<int> set;
            for (const auto& idx : c) {
                if (!idx.is_number_integer())
                    throw ParseError("constraint entries must be edge indices");
                int e = idx.get<int>();
                if (e < 0 || e >= static_cast<int>(h.edges.size()))
                    throw ParseError("constraints[" + std::to_string(i) +
                                     "]: edge index out of range");
                set.push_back(e);
            }
            std::sort(set.begin(), set.end());
            set.erase(std::unique(set.begin(), set.end()), set.end());
            h.constraints.push_back(std::move(set));
        }
    }
    return h;
}

inline HittingInstance parseHittingFile(const std::string& path) {
    return parseHitting(detail::loadJsonFile(path));
}

}  // namespace vbp
