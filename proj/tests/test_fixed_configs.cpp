#include "cms/fixed_configs.hpp"

#include "cms/errors.hpp"
#include "cms/oracle.hpp"
#include "helpers.hpp"

#include <doctest.h>

#include <numeric>

using namespace cms;
using namespace cms::test;

TEST_CASE("machine count grid") {
    SUBCASE("powers of two") {
        CHECK(machine_count_grid(8, Rat(1)) == std::vector<long long>{1, 2, 4, 8});
    }
    SUBCASE("unit total") { CHECK(machine_count_grid(1, Rat(1, 2)) == std::vector<long long>{1}); }
    SUBCASE("floors of powers of 1.5, running past the total") {
        CHECK(machine_count_grid(10, Rat(1, 2)) == std::vector<long long>{1, 2, 3, 5, 7, 11});
    }
    SUBCASE("bad eps") { CHECK_THROWS_AS(machine_count_grid(4, Rat(0)), CmsError); }
}

TEST_CASE("assignment graph from the feasibility lp") {
    SUBCASE("one job, one block, one edge") {
        FeasibilityLp flp = build_feasibility_lp(t1(), {0}, {1});
        BasicSolution sol = solve_min(flp.lp);
        REQUIRE(sol.status == LpStatus::optimal);
        AssignmentGraph g = build_assignment_graph(sol, flp);
        REQUIRE(g.edges.size() == 1);
        CHECK(g.edges[0] == std::pair<int, int>{0, 0});
        CHECK(g.weights[0] == 1);
    }
    SUBCASE("two jobs sharing one block fractionally form a two-edge path") {
        // x1 + x2 <= 3, 2x >= 3 per job: unique point x = (3/2, 3/2)
        Instance path = combinatorial({"b1"}, {config({{"b1", 1}})},
                                      {job("j1", 3, {{"b1", 2}}), job("j2", 3, {{"b1", 2}})});
        FeasibilityLp flp = build_feasibility_lp(path, {0}, {3});
        BasicSolution sol = solve_min(flp.lp);
        REQUIRE(sol.status == LpStatus::optimal);
        CHECK(is_extreme_point(flp.lp, sol.values));
        AssignmentGraph g = build_assignment_graph(sol, flp);
        REQUIRE(g.edges.size() == 2);
        CHECK(g.weights[0] == Rat(3, 2));
        CHECK(check_pseudo_forest(g));
    }
    SUBCASE("all-zero solution has no edges") {
        Instance inst = combinatorial({"b1"}, {config({{"b1", 1}})}, {job("j1", 0, {})});
        FeasibilityLp flp = build_feasibility_lp(inst, {0}, {1});
        BasicSolution sol = solve_min(flp.lp);
        REQUIRE(sol.status == LpStatus::optimal);
        CHECK(build_assignment_graph(sol, flp).edges.empty());
    }
}

namespace {

AssignmentGraph synthetic(int jobs, std::vector<int> block_set,
                          std::vector<std::pair<int, int>> edges, std::vector<Rat> weights) {
    AssignmentGraph g;
    g.num_jobs = jobs;
    g.block_set = std::move(block_set);
    g.edges = std::move(edges);
    g.weights = std::move(weights);
    return g;
}

}  // namespace

TEST_CASE("pseudo-forest recognition") {
    // tree: j0 - b0 - j1
    CHECK(check_pseudo_forest(synthetic(2, {0}, {{0, 0}, {1, 0}}, {Rat(1), Rat(1)})));
    // one cycle: j0 - b0 - j1 - b1 - j0
    CHECK(check_pseudo_forest(
        synthetic(2, {0, 1}, {{0, 0}, {1, 0}, {1, 1}, {0, 1}}, std::vector<Rat>(4, Rat(1, 2)))));
    // theta graph: two jobs, three shared blocks
    CHECK_FALSE(check_pseudo_forest(synthetic(
        2, {0, 1, 2}, {{0, 0}, {1, 0}, {0, 1}, {1, 1}, {0, 2}, {1, 2}}, std::vector<Rat>(6, Rat(1, 3)))));
}

TEST_CASE("cycle break picks the weaker product edge at the lowest job") {
    Instance inst = combinatorial(
        {"b1", "b2"}, {config({{"b1", 1}, {"b2", 1}})},
        {job("j1", 6, {{"b1", 6}, {"b2", 4}}), job("j2", 6, {{"b1", 4}, {"b2", 6}})});
    Resolved res = resolve(inst);
    // 4-cycle with x*f products: (j0,b0) = 1/2*6 = 3, (j0,b1) = 1/2*4 = 2
    AssignmentGraph g = synthetic(2, {0, 1}, {{0, 0}, {0, 1}, {1, 0}, {1, 1}},
                                  std::vector<Rat>(4, Rat(1, 2)));
    RootedForest forest = break_cycles_and_root(g, res);
    REQUIRE(forest.removed_edges.size() == 1);
    CHECK(forest.removed_edges[0] == std::pair<int, int>{0, 1});  // (j0, b2) goes
    CHECK(forest.parent[0] == -1);                                // j0 roots the tree

    SUBCASE("equal products also drop the second neighbor") {
        Instance tie = combinatorial(
            {"b1", "b2"}, {config({{"b1", 1}, {"b2", 1}})},
            {job("j1", 6, {{"b1", 4}, {"b2", 4}}), job("j2", 6, {{"b1", 4}, {"b2", 4}})});
        RootedForest tied = break_cycles_and_root(g, resolve(tie));
        REQUIRE(tied.removed_edges.size() == 1);
        CHECK(tied.removed_edges[0] == std::pair<int, int>{0, 1});
    }
}

TEST_CASE("tree components just get rooted") {
    Instance inst = combinatorial({"b1"}, {config({{"b1", 1}})},
                                  {job("j1", 2, {{"b1", 2}}), job("j2", 2, {{"b1", 2}})});
    AssignmentGraph g = synthetic(2, {0}, {{0, 0}, {1, 0}}, {Rat(1, 2), Rat(1, 2)});
    RootedForest forest = break_cycles_and_root(g, resolve(inst));
    CHECK(forest.removed_edges.empty());
    CHECK(forest.parent[0] == -1);      // j0 is the root
    CHECK(forest.parent[2] == 0);       // b0 hangs under j0
    CHECK(forest.parent[1] == 2);       // j1 hangs under b0
}

TEST_CASE("rounding: floor for parents, ceil for children") {
    Instance inst = combinatorial(
        {"b1", "b2"}, {config({{"b1", 1}, {"b2", 1}})},
        {job("j1", 4, {{"b1", 2}, {"b2", 2}}), job("j2", 4, {{"b1", 2}, {"b2", 2}})});
    Resolved res = resolve(inst);

    SUBCASE("root job rounds all edges up") {
        AssignmentGraph g =
            synthetic(1, {0, 1}, {{0, 0}, {0, 1}}, {Rat(3, 5), Rat(7, 10)});  // x = .6, .7
        RootedForest forest = break_cycles_and_root(g, res);
        auto rounded = round_rooted_forest(g, forest);
        CHECK(rounded[0][0] == 2);  // ceil(1.2)
        CHECK(rounded[1][0] == 2);  // ceil(1.4)
    }
    SUBCASE("a parent edge rounds down") {
        // j0 - b0 - j1, so b0 is j1's parent
        AssignmentGraph g = synthetic(2, {0}, {{0, 0}, {1, 0}}, {Rat(1), Rat(3, 4)});
        RootedForest forest = break_cycles_and_root(g, res);
        auto rounded = round_rooted_forest(g, forest);
        CHECK(rounded[0][1] == 1);  // floor(1.5)

        AssignmentGraph low = synthetic(2, {0}, {{0, 0}, {1, 0}}, {Rat(1), Rat(2, 5)});
        auto rounded_low = round_rooted_forest(low, break_cycles_and_root(low, res));
        CHECK(rounded_low[0][1] == 0);  // floor(0.8)
    }
}

TEST_CASE("fixed-config search on the one-job instance") {
    FixedConfigOptions opts;
    opts.eps = Rat(1, 2);
    Schedule sched = solve_fixed_configs(t1(), opts);
    CHECK(cost(sched) == 3);  // first feasible guess m=1, 2m+1 machines
    CHECK(validate_schedule(t1(), sched).empty());
}

TEST_CASE("fixed-config search uses both configurations when it must") {
    Instance inst = combinatorial({"b1", "b2"}, {config({{"b1", 1}}), config({{"b2", 1}})},
                                  {job("j1", 1, {{"b1", 1}}), job("j2", 1, {{"b2", 1}})});
    FixedConfigOptions opts;
    opts.eps = Rat(1, 2);
    Schedule sched = solve_fixed_configs(inst, opts);
    CHECK(validate_schedule(inst, sched).empty());
    OracleResult oracle = exact_min_machines(inst);
    REQUIRE(oracle.machines == 2);
    CHECK(cost(sched) <= 3 * oracle.machines + 2);  // 2(1+eps)opt + |C|
    CHECK(cost(sched) <= 4 * oracle.machines);      // (3+2eps)opt
}

TEST_CASE("fixed-config search errors on infeasible input and over-guard sizes") {
    Instance inst = combinatorial({"b1"}, {config({{"b1", 1}})}, {job("j1", 3, {})});
    CHECK_THROWS_AS(solve_fixed_configs(inst), CmsError);

    Instance wide = t1();
    for (int c = 0; c < 7; ++c) wide.configurations.push_back(config({{"b1", 1}}));
    try {
        solve_fixed_configs(wide);
        FAIL("guard did not trigger");
    } catch (const CmsError& e) {
        CHECK(e.kind() == ErrorKind::guard_exceeded);
    }
}

TEST_CASE("the rounded point satisfies the covering constraints exactly") {
    // run the pipeline by hand on fuzzed instances and recheck block supply
    // and demand rows of the full relaxation in exact arithmetic
    for (unsigned long long seed = 1; seed <= 40; ++seed) {
        Instance inst = fuzz_instance(seed);
        Resolved res = resolve(inst);
        long long total = std::accumulate(res.demand.begin(), res.demand.end(), 0LL);
        if (total == 0) continue;

        std::vector<int> all_configs(res.config_counts.size());
        std::iota(all_configs.begin(), all_configs.end(), 0);
        auto grid = machine_count_grid(total, Rat(1, 2));
        for (long long m : grid) {
            std::vector<long long> counts(all_configs.size(), m);
            FeasibilityLp flp = build_feasibility_lp(res, all_configs, counts);
            BasicSolution sol = solve_min(flp.lp);
            if (sol.status != LpStatus::optimal) continue;

            AssignmentGraph g = build_assignment_graph(sol, flp);
            REQUIRE(check_pseudo_forest(g));
            auto rounded = round_rooted_forest(g, break_cycles_and_root(g, res));

            for (size_t p = 0; p < flp.block_set.size(); ++p) {
                long long used = 0;
                for (int j = 0; j < res.num_jobs; ++j) used += rounded[p][static_cast<size_t>(j)];
                long long supply = 0;
                for (int c : all_configs)
                    supply += (2 * m + 1) *
                              res.config_counts[static_cast<size_t>(c)]
                                               [static_cast<size_t>(flp.block_set[p])];
                CHECK(used <= supply);
            }
            for (int j = 0; j < res.num_jobs; ++j) {
                long long covered = 0;
                for (size_t p = 0; p < flp.block_set.size(); ++p)
                    covered += rounded[p][static_cast<size_t>(j)] *
                               res.f[static_cast<size_t>(j)][static_cast<size_t>(flp.block_set[p])];
                CHECK(covered >= res.demand[static_cast<size_t>(j)]);
            }
            break;  // the first feasible guess is the one the search would take
        }
    }
}

TEST_CASE("every encountered extreme point is a sparse pseudo-forest") {
    for (unsigned long long seed = 1; seed <= 60; ++seed) {
        Instance inst = fuzz_instance(seed);
        Resolved res = resolve(inst);
        if (std::accumulate(res.demand.begin(), res.demand.end(), 0LL) == 0) continue;
        FixedConfigOptions opts;
        opts.eps = Rat(1, 2);
        FixedConfigStats stats;
        Schedule sched = solve_fixed_configs(inst, opts, &stats);
        CHECK(stats.extreme_points > 0);
        CHECK(stats.pseudo_forest_ok);
        CHECK(stats.sparsity_ok);
        CHECK(validate_schedule(inst, sched).empty());

        OracleResult oracle = exact_min_machines(inst);
        REQUIRE(oracle.ok());
        long long c = cost(sched);
        CHECK(c <= 3 * oracle.machines + static_cast<long long>(inst.configurations.size()));
        CHECK(c <= 4 * oracle.machines);
    }
}
