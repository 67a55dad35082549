#pragma once

#include "cms/lp.hpp"
#include "cms/model.hpp"
#include "cms/rational.hpp"

#include <vector>

namespace cms {

// Per-block-type allocation for one small job; entries sum to at most the
// pattern bound k/lambda^2.
struct Pattern {
    std::vector<long long> counts;

    bool operator==(const Pattern&) const = default;
};

struct PtasParams {
    Rat eps;
    Rat lambda;          // eps / (2k)
    long long b = 0;     // block types
    long long k = 0;     // largest configuration size
    long long pattern_bound = 0;  // floor(k / lambda^2)
    bool gamma_overflow = false;  // 2^|W| exceeds any practical job count
    Rat gamma;                    // 2^|W| when representable
};

struct PtasOptions {
    long long pattern_cap = 1'000'000;  // guard on (k/lambda^2)^b
    long long node_budget = 0;          // 0 = oracle default, for the enumeration path
};

// Small iff some single configuration covers an eps fraction of the demand.
// Returns (large, small) job index lists.
std::pair<std::vector<int>, std::vector<int>> classify_jobs(const Instance& inst, const Rat& eps);

// All b-vectors with sum <= bound. First coordinate varies fastest.
std::vector<Pattern> enumerate_patterns(long long b, long long bound, long long cap);

// Indices of the patterns whose allocation covers the job's demand.
std::vector<int> job_type(const std::vector<long long>& f_row, long long demand,
                          const std::vector<Pattern>& patterns);

// LP over large-job block counts, machine counts, and small-job pattern
// counts; z variables exist only for realized types and their satisfying
// patterns.
struct PtasLp {
    LinearProgram lp;
    std::vector<int> large;                      // job indices
    std::vector<std::vector<int>> type_members;  // small jobs per realized type
    std::vector<std::vector<int>> type_patterns; // satisfying pattern indices per type
    int num_blocks = 0;
    int num_configs = 0;

    int x(int large_pos, int block) const;
    int y(int config) const;
    int z(int type_pos, int pattern_pos) const;  // pattern_pos within the type's list

private:
    friend PtasLp build_ptas_lp_impl(const Resolved&, const std::vector<Pattern>&,
                                     const std::vector<int>&, const std::vector<int>&);
    std::vector<int> z_offsets_;
};

PtasLp build_ptas_lp(const Instance& inst, const Rat& eps, const PtasOptions& opts = {});

// PTAS driver: small inputs go to the exact search, larger ones to the LP
// with all variables rounded up and overflow blocks parked one per machine.
Schedule solve_ptas(const Instance& inst, const Rat& eps, const PtasOptions& opts = {});

struct DpOptions {
    long long cell_budget = 50'000'000;
};

// Pseudo-polynomial exact optimum: per-prefix reachability of block-supply
// vectors, wrapped in a binary search over the machine count.
long long dp_min_machines(const Instance& inst, const DpOptions& opts = {});

PtasParams make_ptas_params(const Instance& inst, const Rat& eps, long long pattern_cap);

}  // namespace cms
