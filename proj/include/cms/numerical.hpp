#pragma once

#include "cms/model.hpp"
#include "cms/rational.hpp"

#include <vector>

namespace cms {

// Multiset of block sizes for one job; counts[s-1] copies of size s.
struct BlockMultiset {
    std::vector<long long> counts;

    long long total_size() const;
    long long total_blocks() const;
    long long total_value(const std::vector<long long>& f_row) const;
    bool operator==(const BlockMultiset&) const = default;
};

// Cheapest block multiset covering the demand: DP over achieved value.
// Ties resolve toward the smallest block size at every reconstruction step.
// f_row[s-1] is the per-block value of size s; throws infeasible when the
// demand is positive and the row is all zero.
BlockMultiset min_knapsack_exact(const std::vector<long long>& f_row, long long demand, long long k);

// (1+eps)-approximate variant. Desk-scale demands run the exact DP; larger
// ones take the better of a cost-bounded exact search and the densest-block
// solution.
BlockMultiset min_knapsack_fptas(const std::vector<long long>& f_row, long long demand, long long k,
                                 const Rat& eps);

// First-fit over blocks sorted by descending size (owner job breaking ties);
// at most one machine ends up at most half full. Machines are padded with
// idle unit blocks up to the capacity.
Schedule pack_blocks(const std::vector<BlockMultiset>& per_job, const Instance& inst);

struct NumericalResult {
    Schedule schedule;
    Rat lower_bound;  // (1/k) * sum of chosen block sizes / (1+eps)
};

NumericalResult solve_numerical(const Instance& inst, const Rat& eps, bool parallel = true);

}  // namespace cms
