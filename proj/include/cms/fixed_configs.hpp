#pragma once

#include "cms/lp.hpp"
#include "cms/model.hpp"
#include "cms/rational.hpp"

#include <vector>

namespace cms {

// Ascending machine-count guesses: floors of the powers of (1+eps), running
// until the first value that reaches the total demand.
std::vector<long long> machine_count_grid(long long total_demand, const Rat& eps);

// Bipartite job/block graph over the positive variables of a feasibility-LP
// extreme point. Blocks are positions into FeasibilityLp::block_set.
struct AssignmentGraph {
    int num_jobs = 0;
    std::vector<int> block_set;
    std::vector<std::pair<int, int>> edges;  // (job, block position)
    std::vector<Rat> weights;
};

AssignmentGraph build_assignment_graph(const BasicSolution& sol, const FeasibilityLp& flp);

// True iff every connected component has at most one cycle (edges <= nodes).
bool check_pseudo_forest(const AssignmentGraph& g);

// Nodes: jobs 0..n-1, then blocks n..n+B-1.
struct RootedForest {
    std::vector<int> parent;                       // -1 for roots
    std::vector<std::pair<int, int>> kept_edges;   // (job, block position)
    std::vector<Rat> kept_weights;
    std::vector<std::pair<int, int>> removed_edges;
};

// One edge leaves each cycle: at the lowest-index job of the cycle, the
// neighbor with the smaller weight*f product goes (ties keep the lower block).
// That job roots its tree; acyclic components root at their lowest job.
RootedForest break_cycles_and_root(const AssignmentGraph& g, const Resolved& res);

// Parent edges round to floor(2x), child edges to ceil(2x).
// Result indexed [block position][job].
std::vector<std::vector<long long>> round_rooted_forest(const AssignmentGraph& g,
                                                        const RootedForest& forest);

struct FixedConfigOptions {
    Rat eps = Rat(1, 2);
    int max_configs = 6;
    long long tuple_budget = 4'000'000;  // grid tuples per configuration subset
    bool parallel = true;
};

struct FixedConfigStats {
    long long lp_solves = 0;
    long long tuples_scanned = 0;
    bool pseudo_forest_ok = true;    // every extreme point formed a pseudo-forest
    bool sparsity_ok = true;         // nonzero x count stayed within jobs + blocks
    long long extreme_points = 0;
};

Schedule solve_fixed_configs(const Instance& inst, const FixedConfigOptions& opts = {},
                             FixedConfigStats* stats = nullptr);

}  // namespace cms
