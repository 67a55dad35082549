#include "cms/ptas.hpp"

#include "cms/errors.hpp"
#include "cms/oracle.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace cms {

PtasParams make_ptas_params(const Instance& inst, const Rat& eps, long long pattern_cap) {
    if (eps <= 0) fail(ErrorKind::invalid, "eps must be positive");
    Resolved res = resolve(inst);
    if (res.kind != InstanceKind::combinatorial)
        fail(ErrorKind::kind_mismatch, "ptas needs a combinatorial instance");

    PtasParams params;
    params.eps = eps;
    params.b = res.num_blocks;
    params.k = 1;
    for (int c = 0; c < static_cast<int>(res.config_counts.size()); ++c)
        params.k = std::max(params.k, res.config_size(c));
    params.lambda = eps / Rat(2 * params.k);
    params.pattern_bound = floor_ll(Rat(params.k) / (params.lambda * params.lambda));

    // guard: (k / lambda^2)^b
    Rat per_block = Rat(params.k) / (params.lambda * params.lambda);
    Rat budget(1);
    for (long long i = 0; i < params.b; ++i) {
        budget *= per_block;
        if (budget > pattern_cap)
            fail(ErrorKind::guard_exceeded,
                 "pattern space exceeds the enumeration cap; use a larger eps or smaller instance");
    }
    return params;
}

std::pair<std::vector<int>, std::vector<int>> classify_jobs(const Instance& inst, const Rat& eps) {
    if (eps <= 0) fail(ErrorKind::invalid, "eps must be positive");
    Resolved res = resolve(inst);
    std::vector<int> large, small;
    for (int j = 0; j < res.num_jobs; ++j) {
        bool is_small = false;
        for (const auto& counts : res.config_counts) {
            long long covered = 0;
            for (int i = 0; i < res.num_blocks; ++i)
                covered += counts[static_cast<size_t>(i)] *
                           res.f[static_cast<size_t>(j)][static_cast<size_t>(i)];
            if (Rat(covered) >= eps * res.demand[static_cast<size_t>(j)]) {
                is_small = true;
                break;
            }
        }
        (is_small ? small : large).push_back(j);
    }
    return {large, small};
}

std::vector<Pattern> enumerate_patterns(long long b, long long bound, long long cap) {
    if (b < 1) fail(ErrorKind::invalid, "need at least one block type");
    if (bound < 0) fail(ErrorKind::invalid, "negative pattern bound");
    std::vector<Pattern> patterns;
    std::vector<long long> v(static_cast<size_t>(b), 0);
    long long sum = 0;
    for (;;) {
        patterns.push_back({v});
        if (cap > 0 && static_cast<long long>(patterns.size()) > cap)
            fail(ErrorKind::guard_exceeded, "pattern enumeration exceeded its cap");
        size_t i = 0;
        for (; i < v.size(); ++i) {
            v[i] += 1;
            sum += 1;
            if (sum <= bound) break;
            sum -= v[i];
            v[i] = 0;
        }
        if (i == v.size()) break;
    }
    return patterns;
}

std::vector<int> job_type(const std::vector<long long>& f_row, long long demand,
                          const std::vector<Pattern>& patterns) {
    std::vector<int> type;
    for (size_t p = 0; p < patterns.size(); ++p) {
        long long covered = 0;
        for (size_t i = 0; i < f_row.size(); ++i) covered += patterns[p].counts[i] * f_row[i];
        if (covered >= demand) type.push_back(static_cast<int>(p));
    }
    return type;
}

int PtasLp::x(int large_pos, int block) const { return large_pos * num_blocks + block; }
int PtasLp::y(int config) const { return static_cast<int>(large.size()) * num_blocks + config; }
int PtasLp::z(int type_pos, int pattern_pos) const {
    return z_offsets_[static_cast<size_t>(type_pos)] + pattern_pos;
}

PtasLp build_ptas_lp_impl(const Resolved& res, const std::vector<Pattern>& patterns,
                          const std::vector<int>& large, const std::vector<int>& small) {
    PtasLp out;
    out.large = large;
    out.num_blocks = res.num_blocks;
    out.num_configs = static_cast<int>(res.config_counts.size());

    // Realized types only, keyed by the exact satisfying-pattern set.
    std::map<std::vector<int>, int> type_index;
    for (int j : small) {
        auto type = job_type(res.f[static_cast<size_t>(j)], res.demand[static_cast<size_t>(j)],
                             patterns);
        if (type.empty())
            fail(ErrorKind::infeasible, "small job '" + res.job_ids[static_cast<size_t>(j)] +
                                            "' satisfies no pattern");
        auto [it, fresh] = type_index.insert({type, static_cast<int>(out.type_patterns.size())});
        if (fresh) {
            out.type_patterns.push_back(type);
            out.type_members.push_back({});
        }
        out.type_members[static_cast<size_t>(it->second)].push_back(j);
    }

    LinearProgram& lp = out.lp;
    for (size_t lpos = 0; lpos < large.size(); ++lpos)
        for (int i = 0; i < res.num_blocks; ++i)
            lp.add_var("x[" + res.job_ids[static_cast<size_t>(large[lpos])] + "," +
                       res.block_names[static_cast<size_t>(i)] + "]");
    for (int c = 0; c < out.num_configs; ++c) lp.add_var("y[" + std::to_string(c) + "]", Rat(1));
    for (size_t t = 0; t < out.type_patterns.size(); ++t) {
        out.z_offsets_.push_back(lp.num_vars());
        for (size_t pp = 0; pp < out.type_patterns[t].size(); ++pp)
            lp.add_var("z[t" + std::to_string(t) + ",p" +
                       std::to_string(out.type_patterns[t][pp]) + "]");
    }

    for (int i = 0; i < res.num_blocks; ++i) {
        LinRow row;
        row.name = "supply[" + res.block_names[static_cast<size_t>(i)] + "]";
        for (size_t lpos = 0; lpos < large.size(); ++lpos)
            row.terms.push_back({out.x(static_cast<int>(lpos), i), Rat(1)});
        for (size_t t = 0; t < out.type_patterns.size(); ++t)
            for (size_t pp = 0; pp < out.type_patterns[t].size(); ++pp) {
                long long count =
                    patterns[static_cast<size_t>(out.type_patterns[t][pp])].counts[static_cast<size_t>(i)];
                if (count != 0)
                    row.terms.push_back({out.z(static_cast<int>(t), static_cast<int>(pp)), Rat(count)});
            }
        for (int c = 0; c < out.num_configs; ++c) {
            long long a = res.config_counts[static_cast<size_t>(c)][static_cast<size_t>(i)];
            if (a != 0) row.terms.push_back({out.y(c), Rat(-a)});
        }
        row.rel = Rel::le;
        row.rhs = 0;
        lp.add_constraint(std::move(row));
    }
    for (size_t lpos = 0; lpos < large.size(); ++lpos) {
        int j = large[lpos];
        LinRow row;
        row.name = "demand[" + res.job_ids[static_cast<size_t>(j)] + "]";
        for (int i = 0; i < res.num_blocks; ++i) {
            long long fv = res.f[static_cast<size_t>(j)][static_cast<size_t>(i)];
            if (fv != 0) row.terms.push_back({out.x(static_cast<int>(lpos), i), Rat(fv)});
        }
        row.rel = Rel::ge;
        row.rhs = res.demand[static_cast<size_t>(j)];
        lp.add_constraint(std::move(row));
    }
    for (size_t t = 0; t < out.type_patterns.size(); ++t) {
        LinRow row;
        row.name = "count[t" + std::to_string(t) + "]";
        for (size_t pp = 0; pp < out.type_patterns[t].size(); ++pp)
            row.terms.push_back({out.z(static_cast<int>(t), static_cast<int>(pp)), Rat(1)});
        row.rel = Rel::ge;
        row.rhs = static_cast<long long>(out.type_members[t].size());
        lp.add_constraint(std::move(row));
    }
    return out;
}

PtasLp build_ptas_lp(const Instance& inst, const Rat& eps, const PtasOptions& opts) {
    PtasParams params = make_ptas_params(inst, eps, opts.pattern_cap);
    Resolved res = resolve(inst);
    auto patterns = enumerate_patterns(params.b, params.pattern_bound, 4'000'000);
    auto [large, small] = classify_jobs(inst, eps);
    return build_ptas_lp_impl(res, patterns, large, small);
}

Schedule solve_ptas(const Instance& inst, const Rat& eps, const PtasOptions& opts) {
    if (inst.kind != InstanceKind::combinatorial)
        fail(ErrorKind::kind_mismatch, "ptas needs a combinatorial instance");
    Resolved res = resolve(inst);
    long long total_demand = std::accumulate(res.demand.begin(), res.demand.end(), 0LL);
    if (total_demand == 0) return {};

    PtasParams params = make_ptas_params(inst, eps, opts.pattern_cap);
    auto patterns = enumerate_patterns(params.b, params.pattern_bound, 4'000'000);

    // Enumeration threshold n <= k(|C| + gamma)/lambda with gamma = 2^|W|.
    bool enumerate;
    if (patterns.size() >= 63) {
        enumerate = true;  // gamma dwarfs any real job count
    } else {
        Rat gamma = Rat(BigInt(1) << patterns.size());
        Rat threshold = Rat(params.k) *
                        (Rat(static_cast<long long>(res.config_counts.size())) + gamma) /
                        params.lambda;
        enumerate = Rat(res.num_jobs) <= threshold;
    }

    if (enumerate) {
        long long budget = opts.node_budget > 0 ? opts.node_budget : default_node_budget();
        ExactSchedule exact = exact_schedule(inst, budget);
        if (exact.result.status == OracleStatus::infeasible)
            fail(ErrorKind::infeasible, "no schedule satisfies the demands");
        if (exact.result.status == OracleStatus::exceeds_budget)
            fail(ErrorKind::guard_exceeded, "enumeration exceeded the node budget");
        return exact.schedule;
    }

    auto [large, small] = classify_jobs(inst, eps);
    PtasLp plp = build_ptas_lp_impl(res, patterns, large, small);
    BasicSolution sol = solve_min(plp.lp);
    if (sol.status == LpStatus::infeasible)
        fail(ErrorKind::infeasible, "relaxation is infeasible");
    if (sol.status != LpStatus::optimal) fail(ErrorKind::internal, "relaxation did not optimize");

    // Round everything up. need[i][j] = blocks of type i handed to job j.
    std::vector<std::vector<long long>> need(
        static_cast<size_t>(res.num_blocks), std::vector<long long>(static_cast<size_t>(res.num_jobs), 0));
    for (size_t lpos = 0; lpos < plp.large.size(); ++lpos)
        for (int i = 0; i < res.num_blocks; ++i)
            need[static_cast<size_t>(i)][static_cast<size_t>(plp.large[lpos])] +=
                ceil_ll(sol.values[static_cast<size_t>(plp.x(static_cast<int>(lpos), i))]);
    for (size_t t = 0; t < plp.type_patterns.size(); ++t) {
        const auto& members = plp.type_members[t];
        size_t next = 0;
        for (size_t pp = 0; pp < plp.type_patterns[t].size() && next < members.size(); ++pp) {
            long long seats = ceil_ll(sol.values[static_cast<size_t>(plp.z(static_cast<int>(t),
                                                                           static_cast<int>(pp)))]);
            const Pattern& pattern = patterns[static_cast<size_t>(plp.type_patterns[t][pp])];
            for (; seats > 0 && next < members.size(); --seats, ++next)
                for (int i = 0; i < res.num_blocks; ++i)
                    need[static_cast<size_t>(i)][static_cast<size_t>(members[next])] +=
                        pattern.counts[static_cast<size_t>(i)];
        }
        if (next < members.size())
            fail(ErrorKind::internal, "rounded pattern counts left small jobs unassigned");
    }

    // ceil(y) machines per configuration, then one extra machine per block
    // that the rounded counts demand beyond the supply.
    struct Machine {
        int config;
        std::vector<long long> free;
        std::vector<int> slot_jobs;
    };
    std::vector<Machine> machines;
    for (int c = 0; c < static_cast<int>(res.config_counts.size()); ++c) {
        long long copies = ceil_ll(sol.values[static_cast<size_t>(plp.y(c))]);
        for (long long r = 0; r < copies; ++r)
            machines.push_back({c, res.config_counts[static_cast<size_t>(c)],
                                std::vector<int>(static_cast<size_t>(res.config_size(c)), -1)});
    }
    auto place = [&](Machine& machine, int block, int job) {
        long long offset = 0;
        const auto& counts = res.config_counts[static_cast<size_t>(machine.config)];
        for (int i = 0; i < block; ++i) offset += counts[static_cast<size_t>(i)];
        long long within = counts[static_cast<size_t>(block)] - machine.free[static_cast<size_t>(block)];
        machine.slot_jobs[static_cast<size_t>(offset + within)] = job;
        machine.free[static_cast<size_t>(block)] -= 1;
    };
    Schedule overflow;
    for (int i = 0; i < res.num_blocks; ++i) {
        int host_config = -1;
        for (int c = 0; c < static_cast<int>(res.config_counts.size()) && host_config < 0; ++c)
            if (res.config_counts[static_cast<size_t>(c)][static_cast<size_t>(i)] > 0) host_config = c;
        for (int j = 0; j < res.num_jobs; ++j) {
            long long left = need[static_cast<size_t>(i)][static_cast<size_t>(j)];
            for (auto& machine : machines) {
                while (left > 0 && machine.free[static_cast<size_t>(i)] > 0) {
                    place(machine, i, j);
                    left -= 1;
                }
                if (left == 0) break;
            }
            // overflow blocks park one per fresh machine
            for (; left > 0; --left) {
                if (host_config < 0)
                    fail(ErrorKind::infeasible, "block type '" +
                                                    res.block_names[static_cast<size_t>(i)] +
                                                    "' appears in no configuration");
                Machine extra{host_config, res.config_counts[static_cast<size_t>(host_config)],
                              std::vector<int>(
                                  static_cast<size_t>(res.config_size(host_config)), -1)};
                place(extra, i, j);
                overflow.machines.push_back(
                    make_machine(res, extra.config, extra.slot_jobs, 1));
            }
        }
    }

    Schedule sched;
    for (const auto& machine : machines)
        sched.machines.push_back(make_machine(res, machine.config, machine.slot_jobs, 1));
    for (const auto& use : overflow.machines) sched.machines.push_back(use);
    return merge_machines(sched);
}

long long dp_min_machines(const Instance& inst, const DpOptions& opts) {
    if (inst.kind != InstanceKind::combinatorial)
        fail(ErrorKind::kind_mismatch, "dp needs a combinatorial instance");
    Resolved res = resolve(inst);
    const int b = res.num_blocks, n = res.num_jobs;
    long long total_demand = std::accumulate(res.demand.begin(), res.demand.end(), 0LL);
    if (total_demand == 0) return 0;
    if (res.config_counts.empty()) fail(ErrorKind::infeasible, "no configurations");

    // Per job: is it servable at all, and how many machines would it need alone?
    long long n_hi = 0;
    for (int j = 0; j < n; ++j) {
        if (res.demand[static_cast<size_t>(j)] == 0) continue;
        long long best = 0;
        for (int i = 0; i < b; ++i) {
            bool configured = false;
            for (const auto& counts : res.config_counts)
                configured = configured || counts[static_cast<size_t>(i)] > 0;
            if (configured)
                best = std::max(best, res.f[static_cast<size_t>(j)][static_cast<size_t>(i)]);
        }
        if (best == 0) fail(ErrorKind::infeasible, "job '" + res.job_ids[static_cast<size_t>(j)] +
                                                       "' can never be served");
        n_hi += (res.demand[static_cast<size_t>(j)] + best - 1) / best;
    }

    // More blocks of one type than every job could ever use never helps.
    std::vector<long long> cap(static_cast<size_t>(b), 0);
    for (int i = 0; i < b; ++i)
        for (int j = 0; j < n; ++j) {
            long long fv = res.f[static_cast<size_t>(j)][static_cast<size_t>(i)];
            if (fv > 0)
                cap[static_cast<size_t>(i)] +=
                    (res.demand[static_cast<size_t>(j)] + fv - 1) / fv;
        }

    long long cells = 1;
    for (int i = 0; i < b; ++i) {
        cells *= cap[static_cast<size_t>(i)] + 1;
        if (cells > opts.cell_budget)
            fail(ErrorKind::guard_exceeded, "supply grid exceeds the cell budget");
    }

    std::vector<long long> stride(static_cast<size_t>(b), 1);
    for (int i = 1; i < b; ++i)
        stride[static_cast<size_t>(i)] =
            stride[static_cast<size_t>(i - 1)] * (cap[static_cast<size_t>(i - 1)] + 1);

    // Minimal satisfying block vectors per job: T true, dropping any used
    // block breaks it.
    std::vector<std::vector<std::vector<long long>>> minimal(static_cast<size_t>(n));
    {
        std::vector<long long> m(static_cast<size_t>(b), 0);
        for (int j = 0; j < n; ++j) {
            long long d = res.demand[static_cast<size_t>(j)];
            if (d == 0) {
                minimal[static_cast<size_t>(j)].push_back(std::vector<long long>(static_cast<size_t>(b), 0));
                continue;
            }
            std::fill(m.begin(), m.end(), 0);
            long long covered = 0;
            for (;;) {
                if (covered >= d) {
                    bool is_minimal = true;
                    for (int i = 0; i < b && is_minimal; ++i)
                        if (m[static_cast<size_t>(i)] > 0)
                            is_minimal = covered - res.f[static_cast<size_t>(j)][static_cast<size_t>(i)] < d;
                    if (is_minimal) minimal[static_cast<size_t>(j)].push_back(m);
                }
                int i = 0;
                for (; i < b; ++i) {
                    m[static_cast<size_t>(i)] += 1;
                    covered += res.f[static_cast<size_t>(j)][static_cast<size_t>(i)];
                    if (m[static_cast<size_t>(i)] <= cap[static_cast<size_t>(i)] && covered < d + res.f[static_cast<size_t>(j)][static_cast<size_t>(i)])
                        break;
                    covered -= m[static_cast<size_t>(i)] * res.f[static_cast<size_t>(j)][static_cast<size_t>(i)];
                    m[static_cast<size_t>(i)] = 0;
                }
                if (i == b) break;
            }
            if (minimal[static_cast<size_t>(j)].empty())
                fail(ErrorKind::infeasible, "job '" + res.job_ids[static_cast<size_t>(j)] +
                                                "' cannot be covered within the supply caps");
        }
    }

    // Reachability over job prefixes.
    std::vector<char> reach(static_cast<size_t>(cells), 1);
    std::vector<char> next(static_cast<size_t>(cells), 0);
    std::vector<long long> v(static_cast<size_t>(b), 0);
    for (int j = 0; j < n; ++j) {
        std::fill(next.begin(), next.end(), 0);
        long long ops = 0;
        for (long long cell = 0; cell < cells; ++cell) {
            if (!reach[static_cast<size_t>(cell)]) continue;
            long long rest = cell;
            for (int i = 0; i < b; ++i) {
                v[static_cast<size_t>(i)] = rest % (cap[static_cast<size_t>(i)] + 1);
                rest /= cap[static_cast<size_t>(i)] + 1;
            }
            for (const auto& m : minimal[static_cast<size_t>(j)]) {
                if (++ops > opts.cell_budget)
                    fail(ErrorKind::guard_exceeded, "dp transition count exceeds the cell budget");
                long long target = 0;
                bool fits = true;
                for (int i = 0; i < b && fits; ++i) {
                    long long sum = v[static_cast<size_t>(i)] + m[static_cast<size_t>(i)];
                    if (sum > cap[static_cast<size_t>(i)])
                        fits = false;
                    else
                        target += sum * stride[static_cast<size_t>(i)];
                }
                if (fits) next[static_cast<size_t>(target)] = 1;
            }
        }
        std::swap(reach, next);
    }
    // Monotone closure: if v is enough, any v' >= v is enough.
    for (int i = 0; i < b; ++i)
        for (long long cell = 0; cell < cells; ++cell) {
            if (!reach[static_cast<size_t>(cell)]) continue;
            long long coord = (cell / stride[static_cast<size_t>(i)]) % (cap[static_cast<size_t>(i)] + 1);
            if (coord < cap[static_cast<size_t>(i)])
                reach[static_cast<size_t>(cell + stride[static_cast<size_t>(i)])] = 1;
        }

    auto feasible = [&](long long machines) {
        if (machines == 0) return false;
        // distribute `machines` machines over the configurations
        const int nc = static_cast<int>(res.config_counts.size());
        std::vector<long long> take(static_cast<size_t>(nc), 0);
        bool found = false;
        auto rec = [&](auto&& self, int c, long long left) -> void {
            if (found) return;
            if (c == nc - 1) {
                take[static_cast<size_t>(c)] = left;
                long long cell = 0;
                for (int i = 0; i < b; ++i) {
                    long long supply = 0;
                    for (int cc = 0; cc < nc; ++cc)
                        supply += take[static_cast<size_t>(cc)] *
                                  res.config_counts[static_cast<size_t>(cc)][static_cast<size_t>(i)];
                    cell += std::min(supply, cap[static_cast<size_t>(i)]) * stride[static_cast<size_t>(i)];
                }
                found = found || reach[static_cast<size_t>(cell)];
                return;
            }
            for (long long t = 0; t <= left && !found; ++t) {
                take[static_cast<size_t>(c)] = t;
                self(self, c + 1, left - t);
            }
        };
        rec(rec, 0, machines);
        return found;
    };

    long long lo = 1, hi = n_hi;
    if (!feasible(hi)) fail(ErrorKind::internal, "upper bound on the machine count is not feasible");
    while (lo < hi) {
        long long mid = lo + (hi - lo) / 2;
        if (feasible(mid))
            hi = mid;
        else
            lo = mid + 1;
    }
    return lo;
}

}  // namespace cms
