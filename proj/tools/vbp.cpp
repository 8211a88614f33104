// Command-line front end: solve / validate / reduce / generate / oracle
// commands over the document formats, with reproducible seeding and
// identical output bytes for identical (input, flags, seed).

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "vbp/applications.hpp"
#include "vbp/hardness.hpp"
#include "vbp/io.hpp"
#include "vbp/oracle.hpp"
#include "vbp/solver.hpp"

namespace {

using namespace vbp;

struct Options {
    std::string engine = "pfaffian";
    std::uint64_t seed = 0;
    bool seedGiven = false;
    int repeats = 0;
    int jobs = 1;
    bool noValidate = false;
    std::string format = "plain";
    bool timing = false;
    bool breakTies = false;
    int maxPolyDegree = 1 << 20;
    long long maxEntryBits = 1LL << 24;

    std::string input;
    std::string pred;          // solve-cover / validate / oracle solve-cover
    long long targetWeight = 0;  // exact-match
    bool wantMaxCost = false;    // exact-match --max-cost
    std::string outDir = ".";    // gen-hard
    bool verify = false;         // gen-hard

    EngineConfig engineConfig() const {
        EngineConfig cfg;
        cfg.seed = seed;
        cfg.repeats = repeats;
        cfg.engine = engine == "gf2" ? Engine::Gf2Sieve : Engine::Pfaffian;
        cfg.maxPolyDegree = maxPolyDegree;
        cfg.maxEntryBits = maxEntryBits;
        return cfg;
    }
};

void addEngineFlags(CLI::App* cmd, Options& opt) {
    cmd->add_option("--engine", opt.engine, "matching engine")
        ->check(CLI::IsMember({"pfaffian", "gf2"}));
    cmd->add_option("--seed", opt.seed, "64-bit RNG seed (default: random)")
        ->each([&opt](const std::string&) { opt.seedGiven = true; });
    cmd->add_option("--repeats", opt.repeats,
                    "Monte-Carlo repeats (default: ~2 log2 N)");
    cmd->add_option("--max-poly-degree", opt.maxPolyDegree,
                    "budget: largest tracked weight");
    cmd->add_option("--max-entry-bits", opt.maxEntryBits,
                    "budget: matrix entry size limit");
}

void addCommonFlags(CLI::App* cmd, Options& opt) {
    cmd->add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"plain", "structured"}));
    cmd->add_flag("--timing", opt.timing, "include wall-clock timing in output");
}

void addValidationFlags(CLI::App* cmd, Options& opt) {
    cmd->add_flag("--no-validate", opt.noValidate,
                  "skip the structural-promise check");
    cmd->add_flag("--break-ties", opt.breakTies,
                  "append a tie-breaking dimension when items are identical");
}

Instance loadInstance(const Options& opt) {
    Json doc = detail::loadJsonFile(opt.input);
    Instance inst = parseInstance(doc, /*allowDuplicates=*/opt.breakTies);
    if (opt.breakTies) inst = addTieBreakDimension(std::move(inst));
    return inst;
}

CoverPred effectivePred(const Options& opt, const Instance& inst) {
    if (opt.pred == "any") return CoverPred::Any;
    if (opt.pred == "all") return CoverPred::All;
    return inst.coverPred;
}

// The tie-break coordinate never reaches 1 on any subset, so it preserves
// fitting and any-coordinate covering but falsifies all-coordinate
// covering. Refuse the combination instead of silently answering NO.
void rejectTieBreakForAllCovering(const Options& opt, CoverPred pred) {
    if (opt.breakTies && pred == CoverPred::All)
        throw ParseError(
            "--break-ties appends a coordinate that never reaches 1 and "
            "would falsify all-coordinate covering; deduplicate the items "
            "instead");
}

// Text edge lists: first line "N m", then one "u v weight [cost]" line
// per edge. Blank lines and '#' comments are skipped.
MatchingGraph parseEdgeList(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    MatchingGraph g;
    long long m = -1;
    long long seen = 0;
    std::string line;
    int lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        std::string where = path + ":" + std::to_string(lineNo);
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first) || first[0] == '#') continue;
        ls.clear();
        ls.seekg(0);
        if (m < 0) {
            if (!(ls >> g.nodes >> m) || g.nodes < 0 || m < 0)
                throw ParseError(where + ": expected header 'N m'");
            continue;
        }
        int u, v;
        long long w, cost = 0;
        if (!(ls >> u >> v >> w))
            throw ParseError(where + ": expected 'u v weight [cost]'");
        std::string rest;
        if (ls >> rest) {
            try {
                cost = std::stoll(rest);
            } catch (...) {
                throw ParseError(where + ": bad cost '" + rest + "'");
            }
            if (ls >> rest) throw ParseError(where + ": trailing tokens");
        }
        g.addEdge(u, v, w, cost);
        ++seen;
    }
    if (m < 0) throw ParseError(path + ": missing 'N m' header");
    if (seen != m)
        throw ParseError(path + ": header declares " + std::to_string(m) +
                         " edges but " + std::to_string(seen) + " were given");
    g.check();
    return g;
}

struct Answer {
    bool yes = false;
    std::optional<long long> value;  // min-bins count
    SolveStats stats;
    bool haveStats = false;
};

int report(const Answer& ans, const Options& opt, bool randomized, double ms) {
    if (opt.format == "structured") {
        Json out;
        if (ans.value)
            out["answer"] = ans.yes ? Json(*ans.value) : Json("INFEASIBLE");
        else
            out["answer"] = ans.yes ? "YES" : "NO";
        if (randomized) {
            out["engine"] = opt.engine;
            out["seed"] = opt.seed;
        }
        if (ans.haveStats) {
            out["trivial"] = ans.stats.trivial;
            if (!ans.stats.trivial) {
                out["nodes"] = ans.stats.nodes;
                out["edges"] = ans.stats.edges;
                out["k"] = ans.stats.k;
                out["target"] = ans.stats.target;
                out["repeats"] = ans.stats.repeats;
            }
            if (ans.stats.guesses > 0) out["guesses"] = ans.stats.guesses;
        }
        if (opt.timing) out["time_ms"] = ms;
        std::cout << out.dump() << "\n";
    } else {
        if (ans.value && ans.yes)
            std::cout << *ans.value << "\n";
        else if (ans.value)
            std::cout << "INFEASIBLE" << "\n";
        else
            std::cout << (ans.yes ? "YES" : "NO") << "\n";
        if (randomized) std::cout << "seed=" << opt.seed << "\n";
        if (opt.timing) std::cout << "time_ms=" << ms << "\n";
    }
    return ans.yes ? 0 : 1;
}

int checkTriplePromise(const Instance& inst, bool covering, CoverPred pred) {
    // With promise "none" every item is treated as small, so the structural
    // promise about large triples has nothing to say.
    if (inst.promiseNone) return 0;
    if (covering) {
        auto v = inst.findNonCoveringTripleViolation(pred);
        if (v.found) {
            std::cerr << "error: large items " << v.a << ", " << v.b << ", " << v.c
                      << " do not cover a bin together; the 3-covering promise "
                         "fails\n";
            return 2;
        }
    } else {
        auto v = inst.findIncompatibleTripleViolation();
        if (v.found) {
            std::cerr << "error: large items " << v.a << ", " << v.b << ", " << v.c
                      << " fit into one bin together; the 3-incompatibility "
                         "promise fails\n";
            return 2;
        }
    }
    return 0;
}

int runSolvePack(const Options& opt) {
    Instance inst = loadInstance(opt);
    if (!opt.noValidate) {
        int rc = checkTriplePromise(inst, false, CoverPred::Any);
        if (rc) return rc;
    }
    auto start = std::chrono::steady_clock::now();
    Answer ans;
    ans.yes = solvePack(inst, opt.engineConfig(), &ans.stats);
    ans.haveStats = true;
    double ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - start)
                    .count();
    return report(ans, opt, true, ms);
}

int runSolveKnapsack(const Options& opt) {
    Instance inst = loadInstance(opt);
    if (!opt.noValidate) {
        int rc = checkTriplePromise(inst, false, CoverPred::Any);
        if (rc) return rc;
    }
    auto start = std::chrono::steady_clock::now();
    Answer ans;
    ans.yes = solveKnapsack(inst, opt.engineConfig(), &ans.stats);
    ans.haveStats = true;
    double ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - start)
                    .count();
    return report(ans, opt, true, ms);
}

int runSolveCover(const Options& opt) {
    Instance inst = loadInstance(opt);
    CoverPred pred = effectivePred(opt, inst);
    rejectTieBreakForAllCovering(opt, pred);
    if (!opt.noValidate) {
        int rc = checkTriplePromise(inst, true, pred);
        if (rc) return rc;
    }
    auto start = std::chrono::steady_clock::now();
    Answer ans;
    ans.yes = solveCovering(inst, pred, opt.engineConfig(), opt.jobs, &ans.stats);
    ans.haveStats = true;
    double ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - start)
                    .count();
    return report(ans, opt, true, ms);
}

int runSolveHitting(const Options& opt) {
    HittingInstance h = parseHittingFile(opt.input);
    auto start = std::chrono::steady_clock::now();
    Answer ans;
    ans.yes = solveHitting(h, opt.engineConfig(), &ans.stats);
    ans.haveStats = true;
    double ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - start)
                    .count();
    return report(ans, opt, true, ms);
}

int runExactMatch(const Options& opt) {
    if (opt.engine == "gf2")
        throw StructuralError(
            "the gf2 engine decides subset-tag coverage, not raw weight "
            "targets; use the pfaffian engine");
    MatchingGraph g = parseEdgeList(opt.input);
    auto start = std::chrono::steady_clock::now();
    Answer ans;
    std::optional<long long> best;
    if (opt.wantMaxCost) {
        best = exactMatchingMaxCost(g, opt.targetWeight, opt.engineConfig());
        ans.yes = best.has_value();
    } else {
        ans.yes = exactMatchingDecide(g, opt.targetWeight, opt.engineConfig());
    }
    double ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - start)
                    .count();
    if (opt.wantMaxCost && best) {
        if (opt.format == "plain") {
            std::cout << "YES " << *best << "\n";
            std::cout << "seed=" << opt.seed << "\n";
            if (opt.timing) std::cout << "time_ms=" << ms << "\n";
            return 0;
        }
        Json out;
        out["answer"] = "YES";
        out["max_cost"] = *best;
        out["engine"] = opt.engine;
        out["seed"] = opt.seed;
        if (opt.timing) out["time_ms"] = ms;
        std::cout << out.dump() << "\n";
        return 0;
    }
    return report(ans, opt, true, ms);
}

int runValidate(const Options& opt) {
    Instance inst = loadInstance(opt);
    bool covering = !opt.pred.empty() || inst.coverPred == CoverPred::All;
    // an explicit flag wins; otherwise packing-style validation
    if (!opt.pred.empty()) covering = true;
    CoverPred pred = effectivePred(opt, inst);
    if (covering) rejectTieBreakForAllCovering(opt, pred);
    int rc = checkTriplePromise(inst, covering, pred);
    if (rc) return rc;
    std::cout << "OK\n";
    return 0;
}

int runReduce(const Options& opt) {
    Instance inst = loadInstance(opt);
    PackingReduction red = reducePackingToMatching(inst);
    if (red.trivial) {
        std::cout << "trivial " << (red.trivialAnswer ? "YES" : "NO") << "\n";
        return 0;
    }
    std::cout << "nodes " << red.graph.nodes << " edges " << red.graph.edges.size()
              << " k " << red.k << " target " << red.target << "\n";
    for (std::size_t i = 0; i < red.nodeLabels.size(); ++i)
        std::cout << "node " << i << " " << red.nodeLabels[i] << "\n";
    for (const Edge& e : red.graph.edges)
        std::cout << e.u << " " << e.v << " " << e.weight << " " << e.cost << " "
                  << e.mask << "\n";
    return 0;
}

int runGenHard(const Options& opt) {
    CnfFormula f = parseDimacsFile(opt.input);
    HardInstanceFamily fam = cnfToPackingFamily(f);
    std::filesystem::create_directories(opt.outDir);
    Json manifest;
    manifest["variables"] = f.vars;
    manifest["clauses"] = static_cast<int>(f.clauses.size());
    manifest["tie_break_added"] = fam.tieBreakAdded;
    Json files = Json::array();
    for (std::size_t t = 0; t < fam.instances.size(); ++t) {
        std::string name = "t" + std::to_string(t) + ".json";
        std::ofstream out(std::filesystem::path(opt.outDir) / name);
        out << instanceToJson(fam.instances[t]).dump(2) << "\n";
        if (!out) throw ParseError("cannot write '" + name + "'");
        files.push_back(name);
    }
    manifest["files"] = std::move(files);
    {
        std::ofstream out(std::filesystem::path(opt.outDir) / "family.json");
        out << manifest.dump(2) << "\n";
        if (!out) throw ParseError("cannot write 'family.json'");
    }
    std::cout << "wrote " << fam.instances.size() << " instances to " << opt.outDir
              << "\n";
    if (opt.verify) {
        VerifyReport rep = verifyFamily(fam);
        if (rep.clean()) {
            std::cout << "verification clean (" << rep.assignmentsChecked
                      << " assignments checked)\n";
        } else {
            for (const auto& v : rep.violations)
                std::cerr << "violation: " << v << "\n";
            return 2;
        }
    }
    return 0;
}

int runMinBins(const Options& opt) {
    Instance inst = loadInstance(opt);
    if (!opt.noValidate) {
        int rc = checkTriplePromise(inst, false, CoverPred::Any);
        if (rc) return rc;
    }
    auto start = std::chrono::steady_clock::now();
    Answer ans;
    auto bins = minBins(inst, opt.engineConfig(), &ans.stats);
    ans.haveStats = true;
    ans.yes = bins.has_value();
    ans.value = bins ? *bins : -1;
    double ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - start)
                    .count();
    return report(ans, opt, true, ms);
}

// ---- oracle mirrors ------------------------------------------------------

int runOraclePack(const Options& opt) {
    Instance inst = loadInstance(opt);
    Answer ans;
    ans.yes = brutePack(inst);
    return report(ans, opt, false, 0);
}

int runOracleKnapsack(const Options& opt) {
    Instance inst = loadInstance(opt);
    if (!inst.hasGoal) throw StructuralError("knapsack instances need 'goal_profit'");
    Answer ans;
    ans.yes = bruteKnapsack(inst) >= inst.goalProfit;
    return report(ans, opt, false, 0);
}

int runOracleCover(const Options& opt) {
    Instance inst = loadInstance(opt);
    CoverPred pred = effectivePred(opt, inst);
    rejectTieBreakForAllCovering(opt, pred);
    Answer ans;
    ans.yes = bruteCover(inst, pred);
    return report(ans, opt, false, 0);
}

int runOracleHitting(const Options& opt) {
    HittingInstance h = parseHittingFile(opt.input);
    Answer ans;
    ans.yes = bruteHitting(h);
    return report(ans, opt, false, 0);
}

int runOracleExactMatch(const Options& opt) {
    MatchingGraph g = parseEdgeList(opt.input);
    Answer ans;
    if (opt.wantMaxCost) {
        auto best = bruteMaxCostMatching(g, opt.targetWeight);
        ans.yes = best.has_value();
        if (best) {
            if (opt.format == "plain") {
                std::cout << "YES " << *best << "\n";
                return 0;
            }
            Json out;
            out["answer"] = "YES";
            out["max_cost"] = *best;
            std::cout << out.dump() << "\n";
            return 0;
        }
    } else {
        ans.yes = bruteExactMatching(g, opt.targetWeight);
    }
    return report(ans, opt, false, 0);
}

int runOracleMinBins(const Options& opt) {
    Instance inst = loadInstance(opt);
    Answer ans;
    auto bins = bruteMinBins(inst);
    ans.yes = bins.has_value();
    ans.value = bins ? *bins : -1;
    return report(ans, opt, false, 0);
}

}  // namespace

int main(int argc, char** argv) {
    Options opt;
    CLI::App app{"exact decision solver for vector bin packing with few small "
                 "items, its knapsack/covering/hitting siblings, and the "
                 "exact-weight matching engines underneath"};
    app.require_subcommand(1);

    int (*handler)(const Options&) = nullptr;
    auto set = [&handler](int (*fn)(const Options&)) {
        return [&handler, fn]() { handler = fn; };
    };

    auto* solvePackCmd = app.add_subcommand("solve-pack", "decide a packing instance");
    solvePackCmd->add_option("input", opt.input, "instance document")->required();
    addEngineFlags(solvePackCmd, opt);
    addCommonFlags(solvePackCmd, opt);
    addValidationFlags(solvePackCmd, opt);
    solvePackCmd->callback(set(runSolvePack));

    auto* knapCmd = app.add_subcommand("solve-knapsack",
                                       "decide a multiple-knapsack instance");
    knapCmd->add_option("input", opt.input, "instance document")->required();
    addEngineFlags(knapCmd, opt);
    addCommonFlags(knapCmd, opt);
    addValidationFlags(knapCmd, opt);
    knapCmd->callback(set(runSolveKnapsack));

    auto* coverCmd = app.add_subcommand("solve-cover", "decide a bin-covering instance");
    coverCmd->add_option("input", opt.input, "instance document")->required();
    coverCmd->add_option("--pred", opt.pred, "covering predicate")
        ->check(CLI::IsMember({"any", "all"}));
    coverCmd->add_option("--jobs", opt.jobs, "parallel guesses")->check(CLI::PositiveNumber);
    addEngineFlags(coverCmd, opt);
    addCommonFlags(coverCmd, opt);
    addValidationFlags(coverCmd, opt);
    coverCmd->callback(set(runSolveCover));

    auto* hitCmd = app.add_subcommand("solve-hitting",
                                      "decide perfect matching with hitting constraints");
    hitCmd->add_option("input", opt.input, "graph document")->required();
    addEngineFlags(hitCmd, opt);
    addCommonFlags(hitCmd, opt);
    hitCmd->callback(set(runSolveHitting));

    auto* matchCmd = app.add_subcommand("exact-match",
                                        "decide an exact-weight perfect matching");
    matchCmd->add_option("input", opt.input, "edge-list file ('N m' then 'u v w [cost]')")
        ->required();
    matchCmd->add_option("-t,--target", opt.targetWeight, "target total weight")
        ->required();
    matchCmd->add_flag("--max-cost", opt.wantMaxCost,
                       "report the maximum cost over matchings hitting the target");
    addEngineFlags(matchCmd, opt);
    addCommonFlags(matchCmd, opt);
    matchCmd->callback(set(runExactMatch));

    auto* validateCmd = app.add_subcommand("validate",
                                           "check document shape and the triple promise");
    validateCmd->add_option("input", opt.input, "instance document")->required();
    validateCmd->add_option("--pred", opt.pred,
                            "validate the 3-covering promise with this predicate")
        ->check(CLI::IsMember({"any", "all"}));
    validateCmd->add_flag("--break-ties", opt.breakTies,
                          "append a tie-breaking dimension when items are identical");
    validateCmd->callback(set(runValidate));

    auto* reduceCmd = app.add_subcommand("reduce",
                                         "dump the packing-to-matching translation");
    reduceCmd->add_option("input", opt.input, "instance document")->required();
    reduceCmd->add_flag("--break-ties", opt.breakTies,
                        "append a tie-breaking dimension when items are identical");
    reduceCmd->callback(set(runReduce));

    auto* genCmd = app.add_subcommand("gen-hard",
                                      "compile a DIMACS CNF into packing instances");
    genCmd->add_option("input", opt.input, "DIMACS CNF file")->required();
    genCmd->add_option("-o,--out", opt.outDir, "output directory");
    genCmd->add_flag("--verify", opt.verify, "audit the generated family");
    genCmd->callback(set(runGenHard));

    auto* minBinsCmd = app.add_subcommand("min-bins",
                                          "smallest bin count that packs the instance");
    minBinsCmd->add_option("input", opt.input, "instance document")->required();
    addEngineFlags(minBinsCmd, opt);
    addCommonFlags(minBinsCmd, opt);
    addValidationFlags(minBinsCmd, opt);
    minBinsCmd->callback(set(runMinBins));

    auto* oracleCmd = app.add_subcommand("oracle",
                                         "brute-force mirrors of every solver command");
    oracleCmd->require_subcommand(1);
    struct OracleSub {
        const char* name;
        const char* desc;
        int (*fn)(const Options&);
        bool pred, match;
    } oracleSubs[] = {
        {"solve-pack", "packing by exhaustive assignment", runOraclePack, false, false},
        {"solve-knapsack", "knapsack by exhaustive subsets", runOracleKnapsack, false, false},
        {"solve-cover", "covering by exhaustive assignment", runOracleCover, true, false},
        {"solve-hitting", "hitting by matching enumeration", runOracleHitting, false, false},
        {"exact-match", "matching enumeration", runOracleExactMatch, false, true},
        {"min-bins", "bin sweep with exhaustive packing", runOracleMinBins, false, false},
    };
    for (const auto& sub : oracleSubs) {
        auto* c = oracleCmd->add_subcommand(sub.name, sub.desc);
        c->add_option("input", opt.input, "input document")->required();
        if (sub.pred)
            c->add_option("--pred", opt.pred, "covering predicate")
                ->check(CLI::IsMember({"any", "all"}));
        if (sub.match) {
            c->add_option("-t,--target", opt.targetWeight, "target total weight")
                ->required();
            c->add_flag("--max-cost", opt.wantMaxCost, "report the maximum cost");
        }
        c->add_flag("--break-ties", opt.breakTies,
                    "append a tie-breaking dimension when items are identical");
        addCommonFlags(c, opt);
        c->callback(set(sub.fn));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (!opt.seedGiven) {
        std::random_device rd;
        opt.seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    }

    try {
        return handler(opt);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const StructuralError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const BudgetError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return 2;
    }
}
