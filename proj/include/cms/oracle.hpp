#pragma once

#include "cms/model.hpp"

#include <vector>

namespace cms {

struct GenParams {
    long long n = 3;           // jobs
    long long blocks = 3;      // block types (combinatorial)
    long long configs = 2;     // configurations (combinatorial)
    long long capacity = 4;    // machine size (numerical)
    long long max_demand = 10;
    long long max_table = 5;
    long long max_config_size = 3;
    unsigned long long seed = 1;
};

enum class OracleStatus { found, infeasible, exceeds_budget };

struct OracleResult {
    OracleStatus status = OracleStatus::exceeds_budget;
    long long machines = -1;
    long long nodes = 0;

    bool ok() const { return status == OracleStatus::found; }
};

// Default 1e7 search nodes; env CMS_NODE_BUDGET overrides.
long long default_node_budget();

// Exact minimum machine count: level-by-level search over machine counts on
// the lattice of clamped remaining-demand vectors, moves are the
// dominance-pruned block->job assignments of each admissible configuration.
OracleResult exact_min_machines(const Instance& inst, long long node_budget = default_node_budget());

// Same search, also materializing an optimal schedule as a witness.
struct ExactSchedule {
    OracleResult result;
    Schedule schedule;
};

ExactSchedule exact_schedule(const Instance& inst, long long node_budget = default_node_budget());

// Exhaustive best single-machine throughput for one configuration (guard:
// at most 6 blocks).
long long brute_max_throughput(const Instance& inst, const std::vector<long long>& remaining,
                               const Configuration& sigma);
long long brute_max_throughput(const Instance& inst, const std::vector<long long>& remaining,
                               int config_index);

// Deterministic per seed. Jobs with positive demand always end up servable by
// some configured block.
Instance gen_random(const GenParams& params);
Instance gen_random_numerical(const GenParams& params);

// k = n+1; configurations {[k]} and {[1..n]}; job l has demand 2^l, satisfied
// per block by 2^(l-1) on block l and 2^l on block k. The throughput greedy
// burns n machines here while two suffice.
Instance gen_tight_greedy_family(int n);

}  // namespace cms
