#pragma once

#include "cms/model.hpp"
#include "cms/rational.hpp"

#include <string>
#include <utility>
#include <vector>

namespace cms {

enum class Rel { le, ge };

struct LinRow {
    std::vector<std::pair<int, Rat>> terms;  // (variable index, coefficient)
    Rel rel = Rel::le;
    Rat rhs;
    std::string name;
};

// Minimization LP over nonnegative variables.
struct LinearProgram {
    std::vector<std::string> var_names;
    std::vector<Rat> objective;
    std::vector<LinRow> constraints;

    int add_var(std::string name, Rat obj_coeff = Rat(0));
    void add_constraint(LinRow row);
    int num_vars() const { return static_cast<int>(var_names.size()); }
};

enum class LpStatus { optimal, infeasible, unbounded };

// Basic feasible solution: when optimal, the point is a vertex of the feasible
// polytope (tight constraints, including nonnegativity, have full rank).
struct BasicSolution {
    LpStatus status = LpStatus::infeasible;
    std::vector<Rat> values;
    Rat objective_value;
};

// Two-phase primal simplex in exact rational arithmetic with Bland's
// anti-cycling rule; ties broken by lowest variable index throughout, so the
// returned vertex is deterministic. LPs with an all-zero objective are decided
// by phase 1 alone and return the phase-1 basic feasible point.
BasicSolution solve_min(const LinearProgram& lp);

// Exact re-substitution check, no tolerance.
bool satisfies_exactly(const LinearProgram& lp, const std::vector<Rat>& x);
// Rank of the tight constraints (rows met with equality plus zero variables)
// equals the variable count iff x is an extreme point.
bool is_extreme_point(const LinearProgram& lp, const std::vector<Rat>& x);

// Human-readable minimize / subject-to dump for debugging; not a stable format.
std::string dump_lp(const LinearProgram& lp);

// Covering LP for a combinatorial instance: x[i,j] blocks of type i for job j,
// y[c] machines of each configuration; block supply rows and per-job demand
// rows; objective is the machine count.
struct CmsLp {
    LinearProgram lp;
    int num_blocks = 0;
    int num_jobs = 0;
    int num_configs = 0;

    int x(int block, int job) const { return block * num_jobs + job; }
    int y(int config) const { return num_blocks * num_jobs + config; }
};

CmsLp build_cms_lp(const Instance& inst);

// Pure feasibility LP used by the fixed-configuration search: machine counts
// per chosen configuration are pinned to `machine_counts`, variables exist only
// for block types occurring in the chosen configurations, objective is zero.
struct FeasibilityLp {
    LinearProgram lp;
    std::vector<int> block_set;  // instance block indices, ascending
    int num_jobs = 0;

    int x(int block_pos, int job) const { return block_pos * num_jobs + job; }
};

FeasibilityLp build_feasibility_lp(const Instance& inst, const std::vector<int>& chosen_configs,
                                   const std::vector<long long>& machine_counts);
FeasibilityLp build_feasibility_lp(const Resolved& res, const std::vector<int>& chosen_configs,
                                   const std::vector<long long>& machine_counts);

}  // namespace cms
