#include "cms/lp.hpp"

#include "cms/errors.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace cms {

int LinearProgram::add_var(std::string name, Rat obj_coeff) {
    var_names.push_back(std::move(name));
    objective.push_back(std::move(obj_coeff));
    return static_cast<int>(var_names.size()) - 1;
}

void LinearProgram::add_constraint(LinRow row) {
    for (const auto& [v, coeff] : row.terms)
        if (v < 0 || v >= num_vars()) fail(ErrorKind::invalid, "constraint references unknown variable");
    constraints.push_back(std::move(row));
}

namespace {

// Dense simplex tableau. Columns: structural vars, then one slack per row,
// then phase-1 artificials. Last column holds the rhs.
struct Tableau {
    int rows = 0;
    int cols = 0;  // excluding rhs
    std::vector<std::vector<Rat>> a;
    std::vector<int> basis;  // column basic in each row
    std::vector<Rat> obj;    // reduced-cost row, size cols+1 (last = -objective value)

    Rat& at(int r, int c) { return a[static_cast<size_t>(r)][static_cast<size_t>(c)]; }
    const Rat& at(int r, int c) const { return a[static_cast<size_t>(r)][static_cast<size_t>(c)]; }

    void pivot(int pr, int pc) {
        auto& prow = a[static_cast<size_t>(pr)];
        Rat inv = Rat(1) / prow[static_cast<size_t>(pc)];
        for (auto& v : prow) v *= inv;
        for (int r = 0; r < rows; ++r) {
            if (r == pr) continue;
            Rat factor = at(r, pc);
            if (factor == 0) continue;
            auto& row = a[static_cast<size_t>(r)];
            for (int c = 0; c <= cols; ++c)
                if (prow[static_cast<size_t>(c)] != 0)
                    row[static_cast<size_t>(c)] -= factor * prow[static_cast<size_t>(c)];
        }
        Rat factor = obj[static_cast<size_t>(pc)];
        if (factor != 0)
            for (int c = 0; c <= cols; ++c)
                if (prow[static_cast<size_t>(c)] != 0)
                    obj[static_cast<size_t>(c)] -= factor * prow[static_cast<size_t>(c)];
        basis[static_cast<size_t>(pr)] = pc;
    }

    // Bland's rule: entering = lowest-index column with negative reduced cost;
    // leaving = lexicographic (ratio, basis index). Returns false on unbounded.
    bool run(int usable_cols) {
        for (;;) {
            int enter = -1;
            for (int c = 0; c < usable_cols; ++c) {
                if (obj[static_cast<size_t>(c)] < 0) {
                    enter = c;
                    break;
                }
            }
            if (enter < 0) return true;
            int leave = -1;
            Rat best;
            for (int r = 0; r < rows; ++r) {
                const Rat& coeff = at(r, enter);
                if (coeff <= 0) continue;
                Rat ratio = at(r, cols) / coeff;
                if (leave < 0 || ratio < best ||
                    (ratio == best && basis[static_cast<size_t>(r)] < basis[static_cast<size_t>(leave)])) {
                    leave = r;
                    best = ratio;
                }
            }
            if (leave < 0) return false;
            pivot(leave, enter);
        }
    }
};

}  // namespace

BasicSolution solve_min(const LinearProgram& lp) {
    const int nv = lp.num_vars();
    const int m = static_cast<int>(lp.constraints.size());

    Tableau t;
    t.rows = m;
    t.cols = nv + m;  // structural + slack; artificial columns appended below
    t.a.assign(static_cast<size_t>(m), std::vector<Rat>(static_cast<size_t>(t.cols + 1), Rat(0)));
    t.basis.assign(static_cast<size_t>(m), -1);

    std::vector<int> artificial_rows;
    for (int r = 0; r < m; ++r) {
        const LinRow& row = lp.constraints[static_cast<size_t>(r)];
        for (const auto& [v, coeff] : row.terms) t.at(r, v) += coeff;
        t.at(r, nv + r) = row.rel == Rel::le ? Rat(1) : Rat(-1);
        t.at(r, t.cols) = row.rhs;
        if (t.at(r, t.cols) < 0)
            for (int c = 0; c <= t.cols; ++c) t.at(r, c) = -t.at(r, c);
        if (t.at(r, nv + r) == 1)
            t.basis[static_cast<size_t>(r)] = nv + r;
        else
            artificial_rows.push_back(r);
    }

    // Phase 1: drive artificials to zero.
    if (!artificial_rows.empty()) {
        int art_base = t.cols;
        t.cols += static_cast<int>(artificial_rows.size());
        for (auto& row : t.a) {
            row.resize(static_cast<size_t>(t.cols + 1), Rat(0));
            row[static_cast<size_t>(t.cols)] = row[static_cast<size_t>(art_base)];
            row[static_cast<size_t>(art_base)] = 0;
        }
        for (size_t k = 0; k < artificial_rows.size(); ++k) {
            int r = artificial_rows[k];
            t.at(r, art_base + static_cast<int>(k)) = 1;
            t.basis[static_cast<size_t>(r)] = art_base + static_cast<int>(k);
        }
        t.obj.assign(static_cast<size_t>(t.cols + 1), Rat(0));
        for (size_t k = 0; k < artificial_rows.size(); ++k)
            t.obj[static_cast<size_t>(art_base + static_cast<int>(k))] = 1;
        for (int r : artificial_rows)
            for (int c = 0; c <= t.cols; ++c) t.obj[static_cast<size_t>(c)] -= t.at(r, c);

        t.run(art_base);  // artificial columns never re-enter
        if (t.obj[static_cast<size_t>(t.cols)] != 0) {
            BasicSolution sol;
            sol.status = LpStatus::infeasible;
            return sol;
        }
        // Remove artificials still basic at zero; a row with no other nonzero
        // entry is redundant and can stay with its zero artificial.
        for (int r = 0; r < m; ++r) {
            if (t.basis[static_cast<size_t>(r)] < art_base) continue;
            int cand = -1;
            for (int c = 0; c < art_base; ++c)
                if (t.at(r, c) != 0) {
                    cand = c;
                    break;
                }
            if (cand >= 0) t.pivot(r, cand);
        }
        // drop the artificial columns, moving the rhs down next to the slacks
        for (auto& row : t.a) {
            row[static_cast<size_t>(art_base)] = row[static_cast<size_t>(t.cols)];
            row.resize(static_cast<size_t>(art_base + 1));
        }
        t.cols = art_base;
        // A basic artificial left over marks a redundant zero row; blank it so
        // it never constrains phase 2.
        for (int r = 0; r < m; ++r)
            if (t.basis[static_cast<size_t>(r)] >= art_base)
                for (int c = 0; c <= t.cols; ++c) t.at(r, c) = 0;
    }

    // Phase 2 objective row from the original costs.
    t.obj.assign(static_cast<size_t>(t.cols + 1), Rat(0));
    for (int v = 0; v < nv; ++v) t.obj[static_cast<size_t>(v)] = lp.objective[static_cast<size_t>(v)];
    for (int r = 0; r < m; ++r) {
        int b = t.basis[static_cast<size_t>(r)];
        if (b < 0 || b >= t.cols) continue;
        Rat cb = b < nv ? lp.objective[static_cast<size_t>(b)] : Rat(0);
        if (cb == 0) continue;
        for (int c = 0; c <= t.cols; ++c) t.obj[static_cast<size_t>(c)] -= cb * t.at(r, c);
    }

    BasicSolution sol;
    if (!t.run(t.cols)) {
        sol.status = LpStatus::unbounded;
        return sol;
    }
    sol.status = LpStatus::optimal;
    sol.values.assign(static_cast<size_t>(nv), Rat(0));
    for (int r = 0; r < m; ++r) {
        int b = t.basis[static_cast<size_t>(r)];
        if (b >= 0 && b < nv) sol.values[static_cast<size_t>(b)] = t.at(r, t.cols);
    }
    sol.objective_value = 0;
    for (int v = 0; v < nv; ++v)
        sol.objective_value += lp.objective[static_cast<size_t>(v)] * sol.values[static_cast<size_t>(v)];
    return sol;
}

bool satisfies_exactly(const LinearProgram& lp, const std::vector<Rat>& x) {
    if (static_cast<int>(x.size()) != lp.num_vars()) return false;
    for (const Rat& v : x)
        if (v < 0) return false;
    for (const auto& row : lp.constraints) {
        Rat lhs(0);
        for (const auto& [v, coeff] : row.terms) lhs += coeff * x[static_cast<size_t>(v)];
        if (row.rel == Rel::le ? lhs > row.rhs : lhs < row.rhs) return false;
    }
    return true;
}

bool is_extreme_point(const LinearProgram& lp, const std::vector<Rat>& x) {
    if (!satisfies_exactly(lp, x)) return false;
    const int nv = lp.num_vars();
    std::vector<std::vector<Rat>> tight;
    for (const auto& row : lp.constraints) {
        Rat lhs(0);
        for (const auto& [v, coeff] : row.terms) lhs += coeff * x[static_cast<size_t>(v)];
        if (lhs == row.rhs) {
            std::vector<Rat> dense(static_cast<size_t>(nv), Rat(0));
            for (const auto& [v, coeff] : row.terms) dense[static_cast<size_t>(v)] += coeff;
            tight.push_back(std::move(dense));
        }
    }
    for (int v = 0; v < nv; ++v) {
        if (x[static_cast<size_t>(v)] == 0) {
            std::vector<Rat> dense(static_cast<size_t>(nv), Rat(0));
            dense[static_cast<size_t>(v)] = 1;
            tight.push_back(std::move(dense));
        }
    }

    // Gaussian elimination over the rationals.
    int rank = 0;
    for (int col = 0; col < nv && rank < static_cast<int>(tight.size()); ++col) {
        int pivot = -1;
        for (int r = rank; r < static_cast<int>(tight.size()); ++r)
            if (tight[static_cast<size_t>(r)][static_cast<size_t>(col)] != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        std::swap(tight[static_cast<size_t>(rank)], tight[static_cast<size_t>(pivot)]);
        const Rat head = tight[static_cast<size_t>(rank)][static_cast<size_t>(col)];
        for (int r = rank + 1; r < static_cast<int>(tight.size()); ++r) {
            Rat factor = tight[static_cast<size_t>(r)][static_cast<size_t>(col)] / head;
            if (factor == 0) continue;
            for (int c = col; c < nv; ++c)
                tight[static_cast<size_t>(r)][static_cast<size_t>(c)] -=
                    factor * tight[static_cast<size_t>(rank)][static_cast<size_t>(c)];
        }
        ++rank;
    }
    return rank == nv;
}

std::string dump_lp(const LinearProgram& lp) {
    std::ostringstream os;
    os << "minimize\n ";
    bool first = true;
    for (int v = 0; v < lp.num_vars(); ++v) {
        const Rat& c = lp.objective[static_cast<size_t>(v)];
        if (c == 0) continue;
        os << (first ? " " : " + ") << rat_to_string(c) << " " << lp.var_names[static_cast<size_t>(v)];
        first = false;
    }
    if (first) os << " 0";
    os << "\nsubject to\n";
    for (const auto& row : lp.constraints) {
        os << "  ";
        if (!row.name.empty()) os << row.name << ": ";
        bool f = true;
        for (const auto& [v, coeff] : row.terms) {
            os << (f ? "" : " + ") << rat_to_string(coeff) << " "
               << lp.var_names[static_cast<size_t>(v)];
            f = false;
        }
        os << (row.rel == Rel::le ? " <= " : " >= ") << rat_to_string(row.rhs) << "\n";
    }
    os << "  all variables >= 0\n";
    return os.str();
}

CmsLp build_cms_lp(const Instance& inst) {
    if (inst.kind != InstanceKind::combinatorial)
        fail(ErrorKind::kind_mismatch, "block/configuration LP needs a combinatorial instance");
    Resolved res = resolve(inst);

    CmsLp out;
    out.num_blocks = res.num_blocks;
    out.num_jobs = res.num_jobs;
    out.num_configs = static_cast<int>(res.config_counts.size());
    LinearProgram& lp = out.lp;

    for (int i = 0; i < res.num_blocks; ++i)
        for (int j = 0; j < res.num_jobs; ++j)
            lp.add_var("x[" + res.block_names[static_cast<size_t>(i)] + "," +
                       res.job_ids[static_cast<size_t>(j)] + "]");
    for (int c = 0; c < out.num_configs; ++c) lp.add_var("y[" + std::to_string(c) + "]", Rat(1));

    for (int i = 0; i < res.num_blocks; ++i) {
        LinRow row;
        row.name = "supply[" + res.block_names[static_cast<size_t>(i)] + "]";
        for (int j = 0; j < res.num_jobs; ++j) row.terms.push_back({out.x(i, j), Rat(1)});
        for (int c = 0; c < out.num_configs; ++c) {
            long long a = res.config_counts[static_cast<size_t>(c)][static_cast<size_t>(i)];
            if (a != 0) row.terms.push_back({out.y(c), Rat(-a)});
        }
        row.rel = Rel::le;
        row.rhs = 0;
        lp.add_constraint(std::move(row));
    }
    for (int j = 0; j < res.num_jobs; ++j) {
        LinRow row;
        row.name = "demand[" + res.job_ids[static_cast<size_t>(j)] + "]";
        for (int i = 0; i < res.num_blocks; ++i) {
            long long fv = res.f[static_cast<size_t>(j)][static_cast<size_t>(i)];
            if (fv != 0) row.terms.push_back({out.x(i, j), Rat(fv)});
        }
        row.rel = Rel::ge;
        row.rhs = res.demand[static_cast<size_t>(j)];
        lp.add_constraint(std::move(row));
    }
    return out;
}

FeasibilityLp build_feasibility_lp(const Instance& inst, const std::vector<int>& chosen_configs,
                                   const std::vector<long long>& machine_counts) {
    return build_feasibility_lp(resolve(inst), chosen_configs, machine_counts);
}

FeasibilityLp build_feasibility_lp(const Resolved& res, const std::vector<int>& chosen_configs,
                                   const std::vector<long long>& machine_counts) {
    if (res.kind != InstanceKind::combinatorial)
        fail(ErrorKind::kind_mismatch, "feasibility LP needs a combinatorial instance");
    if (chosen_configs.size() != machine_counts.size())
        fail(ErrorKind::invalid, "one machine count per chosen configuration required");

    FeasibilityLp out;
    out.num_jobs = res.num_jobs;
    std::set<int> block_set;
    for (int c : chosen_configs) {
        if (c < 0 || c >= static_cast<int>(res.config_counts.size()))
            fail(ErrorKind::invalid, "chosen configuration out of range");
        for (int i = 0; i < res.num_blocks; ++i)
            if (res.config_counts[static_cast<size_t>(c)][static_cast<size_t>(i)] > 0)
                block_set.insert(i);
    }
    out.block_set.assign(block_set.begin(), block_set.end());

    LinearProgram& lp = out.lp;
    for (size_t p = 0; p < out.block_set.size(); ++p) {
        int i = out.block_set[p];
        for (int j = 0; j < res.num_jobs; ++j)
            lp.add_var("x[" + res.block_names[static_cast<size_t>(i)] + "," +
                       res.job_ids[static_cast<size_t>(j)] + "]");
    }

    for (size_t p = 0; p < out.block_set.size(); ++p) {
        int i = out.block_set[p];
        LinRow row;
        row.name = "supply[" + res.block_names[static_cast<size_t>(i)] + "]";
        for (int j = 0; j < res.num_jobs; ++j)
            row.terms.push_back({out.x(static_cast<int>(p), j), Rat(1)});
        long long supply = 0;
        for (size_t s = 0; s < chosen_configs.size(); ++s)
            supply += machine_counts[s] *
                      res.config_counts[static_cast<size_t>(chosen_configs[s])][static_cast<size_t>(i)];
        row.rel = Rel::le;
        row.rhs = supply;
        lp.add_constraint(std::move(row));
    }
    for (int j = 0; j < res.num_jobs; ++j) {
        LinRow row;
        row.name = "demand[" + res.job_ids[static_cast<size_t>(j)] + "]";
        for (size_t p = 0; p < out.block_set.size(); ++p) {
            long long fv = res.f[static_cast<size_t>(j)][static_cast<size_t>(out.block_set[p])];
            if (fv != 0) row.terms.push_back({out.x(static_cast<int>(p), j), Rat(fv)});
        }
        row.rel = Rel::ge;
        row.rhs = res.demand[static_cast<size_t>(j)];
        lp.add_constraint(std::move(row));
    }
    return out;
}

}  // namespace cms
