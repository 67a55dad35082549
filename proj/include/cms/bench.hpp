#pragma once

#include "cms/model.hpp"
#include "cms/rational.hpp"

#include <string>
#include <vector>

namespace cms {

struct BenchRow {
    std::string instance_id;
    std::string algorithm;
    std::string epsilon;  // exact rational text, empty when not applicable
    long long cost = -1;
    bool feasible = false;
    bool has_opt = false;
    long long opt = -1;
    double ratio = 0;  // only meaningful when has_opt
    double wall_ms = 0;
    bool skipped = false;
    std::string note;
};

struct BenchConfig {
    std::string suite;  // small | tight | numerical
    long long trials = 10;
    unsigned long long seed = 1;
    bool parallel = true;
    long long node_budget = 0;  // 0 = oracle default
};

// Runs every applicable algorithm against the oracle over seeded instances.
// Rows come back ordered by (instance id, algorithm) regardless of execution
// order.
std::vector<BenchRow> run_bench(const BenchConfig& config);

// Proven per-algorithm bounds; returns violation messages (empty = all good).
// Skipped rows never count; a non-skipped infeasible row is a violation.
std::vector<std::string> check_bounds(const std::vector<BenchRow>& rows);

// The CSV carries the deterministic fields only (no wall time), so identical
// seeds produce byte-identical files.
std::string to_csv(const std::vector<BenchRow>& rows);
std::string to_table(const std::vector<BenchRow>& rows);

}  // namespace cms
