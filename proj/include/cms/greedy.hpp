#pragma once

#include "cms/lp.hpp"
#include "cms/model.hpp"
#include "cms/rational.hpp"

#include <vector>

namespace cms {

// Integer / fractional split of an optimal LP point. Fractional survivors are
// doubled; entries failing either drop rule are zeroed.
struct SplitSolution {
    std::vector<std::vector<long long>> integer_part;  // [block][job]
    std::vector<std::vector<Rat>> fractional_part;     // [block][job]
};

SplitSolution split_lp_solution(const std::vector<std::vector<Rat>>& xstar, const Instance& inst);

// Per-(block, job) usage caps for the fractional-rounding phase. Empty limit
// means every pair is unbounded.
struct Caps {
    std::vector<std::vector<long long>> limit;  // [block][job]

    bool unbounded() const { return limit.empty(); }
    long long remaining(int block, int job) const {
        return unbounded() ? -1 : limit[static_cast<size_t>(block)][static_cast<size_t>(job)];
    }
};

struct ThroughputMachine {
    int config = -1;
    std::vector<int> slot_jobs;  // -1 = idle; slots expand block types in ascending order
    long long throughput = 0;
};

// Greedy assignment of one configuration's blocks: each slot takes the job
// with the largest marginal coverage min{f, remaining}, lowest job on ties.
ThroughputMachine greedy_machine_on_config(const Resolved& res, int config,
                                           const std::vector<long long>& remaining,
                                           const Caps* caps = nullptr);

// Greedy single-machine choice: every configuration is scanned in declaration
// order; the best configuration wins (ties to the lowest job, then lowest
// configuration index).
ThroughputMachine max_throughput_machine(const Resolved& res, const std::vector<long long>& remaining,
                                         const Caps* caps = nullptr);

// Repeatedly places the greedy max-throughput machine, replicating each
// placement until some job on it drops below its largest single-block step.
// `batches_out`, when given, receives the number of placement batches.
Schedule highest_throughput_first(const Instance& inst, const Caps* caps,
                                  std::vector<long long> remaining, long long* batches_out = nullptr);

// Covers per-block-type requirements with configurations, always taking the
// configuration with the largest residual coverage. Machines come back with
// idle slots; callers assign jobs.
Schedule multiset_multicover_greedy(const std::vector<long long>& requirements, const Instance& inst);

// Full pipeline: covering LP, split, multicover over the integer parts,
// throughput-greedy over the fractional parts, both partial schedules doubled.
Schedule solve_greedy_log(const Instance& inst);

}  // namespace cms
