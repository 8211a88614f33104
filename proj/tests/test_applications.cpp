#include "vbp/applications.hpp"

#include <gtest/gtest.h>

#include "corpus.hpp"
#include "vbp/oracle.hpp"
#include "vbp/rng.hpp"

using namespace vbp;

namespace {

EngineConfig pfCfg(std::uint64_t seed, int repeats = 0) {
    EngineConfig cfg;
    cfg.seed = seed;
    cfg.repeats = repeats;
    return cfg;
}

EngineConfig gfCfg(std::uint64_t seed, int repeats = 0) {
    EngineConfig cfg = pfCfg(seed, repeats);
    cfg.engine = Engine::Gf2Sieve;
    return cfg;
}

Instance makeInstance(int d, std::vector<std::vector<Rational>> items,
                      std::vector<int> small, int bins) {
    Instance inst;
    inst.dimension = d;
    inst.items = std::move(items);
    inst.small = std::move(small);
    inst.bins = bins;
    return inst;
}

Instance withProfits(Instance inst, std::vector<long> profits, long goal) {
    for (long p : profits) inst.profits.push_back(Rational(p));
    inst.goalProfit = Rational(goal);
    inst.hasGoal = true;
    return inst;
}

}  // namespace

TEST(Knapsack, OneBinTwoItems) {
    Instance base = makeInstance(
        1, {{corpus::frac(3, 5)}, {corpus::frac(7, 10)}}, {}, 1);
    EXPECT_TRUE(solveKnapsack(withProfits(base, {5, 7}, 7), pfCfg(1)));
    EXPECT_FALSE(solveKnapsack(withProfits(base, {5, 7}, 8), pfCfg(1)));
    base.bins = 2;
    EXPECT_TRUE(solveKnapsack(withProfits(base, {5, 7}, 12), pfCfg(1)));
    EXPECT_FALSE(solveKnapsack(withProfits(base, {5, 7}, 13), pfCfg(1)));
}

TEST(Knapsack, DiscardingIsAllowed) {
    // Three large items but one bin: packing would be trivially NO, the
    // knapsack may leave two items out.
    Instance inst = makeInstance(1,
                                 {{corpus::frac(3, 5)},
                                  {corpus::frac(3, 5)},
                                  {corpus::frac(3, 5)}},
                                 {}, 1);
    EXPECT_TRUE(solveKnapsack(withProfits(inst, {1, 1, 1}, 1), pfCfg(2)));
    EXPECT_FALSE(solveKnapsack(withProfits(inst, {1, 1, 1}, 2), pfCfg(2)));
}

TEST(Knapsack, AllItemsSmall) {
    Instance inst = makeInstance(
        1, {{corpus::frac(1, 2)}, {corpus::frac(1, 2)}}, {0, 1}, 1);
    EXPECT_TRUE(solveKnapsack(withProfits(inst, {3, 4}, 7), pfCfg(3)));
    EXPECT_FALSE(solveKnapsack(withProfits(inst, {3, 4}, 8), pfCfg(3)));

    // Dropping the low-profit item is fine too.
    Instance tight = makeInstance(
        1, {{corpus::frac(3, 4)}, {corpus::frac(3, 4)}}, {0, 1}, 1);
    EXPECT_TRUE(solveKnapsack(withProfits(tight, {3, 4}, 4), pfCfg(3)));
    EXPECT_FALSE(solveKnapsack(withProfits(tight, {3, 4}, 5), pfCfg(3)));
}

TEST(Knapsack, OddLargeCount) {
    Instance inst = makeInstance(1,
                                 {{corpus::frac(3, 5)},
                                  {corpus::frac(1, 10)},
                                  {corpus::frac(1, 10)}},
                                 {1, 2}, 1);
    // All three fit together: 0.6 + 0.1 + 0.1 = 0.8.
    EXPECT_TRUE(solveKnapsack(withProfits(inst, {5, 2, 2}, 9), pfCfg(4)));
    EXPECT_FALSE(solveKnapsack(withProfits(inst, {5, 2, 2}, 10), pfCfg(4)));
}

TEST(Knapsack, TrivialAndInvalidInputs) {
    Instance none = makeInstance(1, {}, {}, 1);
    EXPECT_FALSE(solveKnapsack(withProfits(none, {}, 1), pfCfg(5)));

    Instance noBins = makeInstance(1, {{corpus::frac(1, 2)}}, {}, 0);
    EXPECT_FALSE(solveKnapsack(withProfits(noBins, {5}, 1), pfCfg(5)));

    Instance inst = makeInstance(1, {{corpus::frac(1, 2)}}, {}, 1);
    EXPECT_THROW(solveKnapsack(inst, pfCfg(5)), StructuralError);  // no goal

    Instance zeroGoal = withProfits(inst, {5}, 0);
    EXPECT_THROW(solveKnapsack(zeroGoal, pfCfg(5)), StructuralError);

    Instance fractional = inst;
    fractional.profits = {corpus::frac(1, 2)};
    fractional.goalProfit = Rational(1);
    fractional.hasGoal = true;
    EXPECT_THROW(solveKnapsack(fractional, pfCfg(5)), StructuralError);

    EXPECT_THROW(solveKnapsack(withProfits(inst, {5}, 1), gfCfg(5)),
                 StructuralError);  // engine cannot track costs
}

TEST(Knapsack, ReductionShapeInvariants) {
    Rng rng(corpus::kBaseSeed, 80);
    for (int trial = 0; trial < 80; ++trial) {
        Instance inst = corpus::randomKnapsackInstance(rng);
        auto red = reduceKnapsackToMatching(inst);
        if (red.trivial) continue;
        EXPECT_EQ(red.graph.nodes % 2, 0) << "trial=" << trial;
        red.graph.check();
        for (const auto& e : red.graph.edges) ASSERT_GE(e.cost, 0);
    }
}

TEST(Knapsack, AgreesWithExhaustiveOracle) {
    // Kept small: the max-cost engine carries profits in a huge radix, so
    // node count and profit range dominate the runtime.  The acceptance
    // binary runs a larger sweep of the same comparison.
    Rng rng(corpus::kBaseSeed, 81);
    int yes = 0, total = 0;
    for (int trial = 0; trial < 60; ++trial) {
        Instance inst = corpus::randomKnapsackInstance(rng, 3, 3, 2, 2, 5);
        bool expect = bruteKnapsack(inst) >= inst.goalProfit;
        bool got = solveKnapsack(inst, pfCfg(rng.next(), 6));
        ASSERT_EQ(got, expect) << "trial=" << trial;
        ++total;
        yes += expect;
    }
    EXPECT_GT(yes, 10);
    EXPECT_LT(yes, total - 10);
}

TEST(Covering, GuessEnumeration) {
    // bins=1, L=0: (0,0,0) fails the feasibility count, leaving only
    // (1,0,0) - one bin covered by small items alone.
    auto gs = enumerateCoveringGuesses(1, 0);
    ASSERT_EQ(gs.size(), 1u);
    EXPECT_EQ(gs[0].l0, 1);

    // bins=1, L=3: (0,0,0) needs g/3 = 1 >= 1; (0,1,0), (0,0,1), (1,0,0)
    // all feasible as well.
    gs = enumerateCoveringGuesses(1, 3);
    EXPECT_EQ(gs.size(), 4u);
    for (const auto& g : gs) {
        EXPECT_LE(g.l0 + g.l1 + g.l2, 1);
        EXPECT_LE(g.l1 + 2 * g.l2, 3);
    }

    // Infeasible combination pruned: bins=2, L=1 and no smalls can still
    // guess (2,0,0) or (1,1,0) etc.; every listed guess satisfies the
    // arithmetic constraints.
    for (const auto& g : enumerateCoveringGuesses(2, 1)) {
        int rem = 1 - g.l1 - 2 * g.l2;
        EXPECT_GE(rem, 0);
        EXPECT_GE(g.l0 + g.l1 + g.l2 + rem / 3, 2);
    }
}

TEST(Covering, ThreeLargeOneSmall) {
    // Three 0.4 items cover one bin together; the small 0.01 item may be
    // routed into the covered bin rather than wasted.
    Instance inst = makeInstance(1,
                                 {{corpus::frac(2, 5)},
                                  {corpus::frac(2, 5)},
                                  {corpus::frac(2, 5)},
                                  {corpus::frac(1, 100)}},
                                 {3}, 1);
    EXPECT_TRUE(solveCovering(inst, CoverPred::Any, pfCfg(6)));
    inst.bins = 2;
    EXPECT_FALSE(solveCovering(inst, CoverPred::Any, pfCfg(6)));
}

TEST(Covering, ZeroBinsVacuous) {
    Instance inst = makeInstance(1, {{corpus::frac(1, 2)}}, {}, 0);
    SolveStats stats;
    EXPECT_TRUE(solveCovering(inst, CoverPred::Any, pfCfg(7), 1, &stats));
    EXPECT_TRUE(stats.trivial);
}

TEST(Covering, AllPredicateNeedsEveryCoordinate) {
    Instance inst = makeInstance(2,
                                 {{Rational(1), corpus::frac(1, 2)},
                                  {corpus::frac(1, 10), corpus::frac(1, 2)}},
                                 {}, 1);
    EXPECT_TRUE(solveCovering(inst, CoverPred::Any, pfCfg(8)));
    EXPECT_TRUE(solveCovering(inst, CoverPred::All, pfCfg(8)));
    inst.items[1][1] = corpus::frac(1, 4);
    EXPECT_TRUE(solveCovering(inst, CoverPred::Any, pfCfg(8)));
    EXPECT_FALSE(solveCovering(inst, CoverPred::All, pfCfg(8)));
}

TEST(Covering, Gf2EngineRejected) {
    Instance inst = makeInstance(1, {{Rational(1)}}, {}, 1);
    EXPECT_THROW(solveCovering(inst, CoverPred::Any, gfCfg(9)), StructuralError);
}

TEST(Covering, AgreesWithExhaustiveOracle) {
    Rng rng(corpus::kBaseSeed, 82);
    int yes = 0, total = 0;
    for (int trial = 0; trial < corpus::kAppAgreementInstances; ++trial) {
        Instance inst = corpus::randomCoveringInstance(rng);
        CoverPred pred = rng.coin() ? CoverPred::Any : CoverPred::All;
        bool expect = bruteCover(inst, pred);
        bool got = solveCovering(inst, pred, pfCfg(rng.next(), 20));
        ASSERT_EQ(got, expect)
            << "trial=" << trial
            << " pred=" << (pred == CoverPred::Any ? "any" : "all");
        ++total;
        yes += expect;
    }
    EXPECT_GT(yes, 10);
    EXPECT_LT(yes, total - 10);
}

TEST(Covering, ParallelWorkersMatchSerial) {
    Rng rng(corpus::kBaseSeed, 83);
    for (int trial = 0; trial < 25; ++trial) {
        Instance inst = corpus::randomCoveringInstance(rng);
        std::uint64_t seed = rng.next();
        bool serial = solveCovering(inst, CoverPred::Any, pfCfg(seed, 20), 1);
        bool parallel = solveCovering(inst, CoverPred::Any, pfCfg(seed, 20), 2);
        ASSERT_EQ(serial, parallel) << "trial=" << trial;
    }
}

TEST(Hitting, PathExample) {
    HittingInstance h;
    h.nodes = 4;
    h.edges = {{0, 1}, {1, 2}, {2, 3}};
    h.constraints = {{0}};
    EXPECT_TRUE(solveHitting(h, pfCfg(10)));
    EXPECT_TRUE(solveHitting(h, gfCfg(10)));
    h.constraints = {{1}};
    EXPECT_FALSE(solveHitting(h, pfCfg(10)));
    EXPECT_FALSE(solveHitting(h, gfCfg(10)));
}

TEST(Hitting, TrivialShapes) {
    HittingInstance odd;
    odd.nodes = 3;
    odd.edges = {{0, 1}};
    EXPECT_FALSE(solveHitting(odd, pfCfg(11)));

    HittingInstance empty;
    EXPECT_TRUE(solveHitting(empty, pfCfg(11)));
    empty.constraints = {};  // still zero constraints
    EXPECT_TRUE(solveHitting(empty, gfCfg(11)));
}

TEST(Hitting, ConstraintsForcedOntoSameEdgeFail) {
    HittingInstance h;
    h.nodes = 4;
    h.edges = {{0, 1}, {2, 3}};
    h.constraints = {{0}, {0}};  // need two distinct edges from {ab}
    EXPECT_FALSE(solveHitting(h, pfCfg(12)));
    EXPECT_FALSE(solveHitting(h, gfCfg(12)));
    h.constraints = {{0}, {1}};
    EXPECT_TRUE(solveHitting(h, pfCfg(12)));
    EXPECT_TRUE(solveHitting(h, gfCfg(12)));
}

TEST(Hitting, AgreesWithExhaustiveOracleBothEngines) {
    Rng rng(corpus::kBaseSeed, 84);
    int yes = 0, total = 0;
    for (int trial = 0; trial < corpus::kAppAgreementInstances; ++trial) {
        HittingInstance h = corpus::randomHittingInstance(rng);
        bool expect = bruteHitting(h);
        std::uint64_t seed = rng.next();
        bool viaPfaffian = solveHitting(h, pfCfg(seed, 20));
        bool viaSieve = solveHitting(h, gfCfg(seed, 20));
        ASSERT_EQ(viaPfaffian, expect) << "trial=" << trial;
        ASSERT_EQ(viaSieve, expect) << "trial=" << trial;
        ++total;
        yes += expect;
    }
    EXPECT_GT(yes, 10);
    EXPECT_LT(yes, total - 10);
}

TEST(Budgets, SmallItemCountCaps) {
    Instance many = makeInstance(1, {}, {}, 1);
    for (int i = 0; i < 5; ++i) {
        many.items.push_back({corpus::frac(1, 100 + i)});
        many.small.push_back(i);
    }
    many = withProfits(std::move(many), {1, 1, 1, 1, 1}, 2);
    EXPECT_THROW(reduceKnapsackToMatching(many, 3), BudgetError);
    EXPECT_THROW(reduceCoveringToMatching(many, CoverPred::Any, {1, 0, 0}, 3),
                 BudgetError);

    HittingInstance h;
    h.nodes = 2;
    h.edges = {{0, 1}};
    h.constraints.assign(30, {0});
    EXPECT_THROW(reduceHittingToMatching(h, 26), BudgetError);
}
