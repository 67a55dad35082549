#include "cms/greedy.hpp"

#include "cms/errors.hpp"

#include <algorithm>
#include <numeric>

namespace cms {

SplitSolution split_lp_solution(const std::vector<std::vector<Rat>>& xstar, const Instance& inst) {
    Resolved res = resolve(inst);
    const int b = res.num_blocks, n = res.num_jobs;
    SplitSolution out;
    out.integer_part.assign(static_cast<size_t>(b), std::vector<long long>(static_cast<size_t>(n), 0));
    out.fractional_part.assign(static_cast<size_t>(b), std::vector<Rat>(static_cast<size_t>(n), Rat(0)));

    const Rat half_inv_k = Rat(1, 2 * std::max(1, b));
    for (int j = 0; j < n; ++j) {
        std::vector<Rat> frac(static_cast<size_t>(b));
        Rat max_value(0);  // max_i f_j(i) * z_ij
        for (int i = 0; i < b; ++i) {
            const Rat& x = xstar[static_cast<size_t>(i)][static_cast<size_t>(j)];
            long long whole = floor_ll(x);
            out.integer_part[static_cast<size_t>(i)][static_cast<size_t>(j)] = whole;
            frac[static_cast<size_t>(i)] = x - whole;
            Rat value = frac[static_cast<size_t>(i)] *
                        res.f[static_cast<size_t>(j)][static_cast<size_t>(i)];
            max_value = std::max(max_value, value);
        }
        for (int i = 0; i < b; ++i) {
            const Rat& z = frac[static_cast<size_t>(i)];
            Rat value = z * res.f[static_cast<size_t>(j)][static_cast<size_t>(i)];
            bool drop = z < half_inv_k || value * b < max_value;
            out.fractional_part[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                drop ? Rat(0) : 2 * z;
        }
    }
    return out;
}

namespace {

struct MachineScan {
    std::vector<int> slot_jobs;
    std::vector<int> slot_blocks;
    long long throughput = 0;
};

// Greedy assignment of one configuration's blocks; caps are per-machine
// consumable on top of the global remaining caps.
MachineScan scan_config(const Resolved& res, int config, const std::vector<long long>& remaining,
                        const Caps* caps) {
    MachineScan scan;
    std::vector<long long> work = remaining;
    std::vector<std::vector<long long>> cap_left;
    if (caps && !caps->unbounded()) cap_left = caps->limit;

    const auto& counts = res.config_counts[static_cast<size_t>(config)];
    for (int i = 0; i < res.num_blocks; ++i) {
        for (long long c = 0; c < counts[static_cast<size_t>(i)]; ++c) {
            int best_job = -1;
            long long best_value = 0;
            for (int j = 0; j < res.num_jobs; ++j) {
                if (!cap_left.empty() &&
                    cap_left[static_cast<size_t>(i)][static_cast<size_t>(j)] <= 0)
                    continue;
                long long value = std::min(res.f[static_cast<size_t>(j)][static_cast<size_t>(i)],
                                           work[static_cast<size_t>(j)]);
                if (value > best_value) {
                    best_value = value;
                    best_job = j;
                }
            }
            scan.slot_blocks.push_back(i);
            scan.slot_jobs.push_back(best_job);
            if (best_job >= 0) {
                // Remaining demand drops by the full table value, floored at 0.
                long long fv = res.f[static_cast<size_t>(best_job)][static_cast<size_t>(i)];
                work[static_cast<size_t>(best_job)] =
                    std::max(0LL, work[static_cast<size_t>(best_job)] - fv);
                scan.throughput += best_value;
                if (!cap_left.empty()) cap_left[static_cast<size_t>(i)][static_cast<size_t>(best_job)] -= 1;
            }
        }
    }
    return scan;
}

}  // namespace

ThroughputMachine greedy_machine_on_config(const Resolved& res, int config,
                                           const std::vector<long long>& remaining,
                                           const Caps* caps) {
    MachineScan scan = scan_config(res, config, remaining, caps);
    ThroughputMachine out;
    out.config = config;
    out.slot_jobs = std::move(scan.slot_jobs);
    out.throughput = scan.throughput;
    return out;
}

ThroughputMachine max_throughput_machine(const Resolved& res, const std::vector<long long>& remaining,
                                         const Caps* caps) {
    bool any = false;
    for (long long d : remaining) any = any || d > 0;
    if (!any) fail(ErrorKind::invalid, "nothing to schedule");
    if (res.config_counts.empty()) fail(ErrorKind::infeasible, "no configurations");

    ThroughputMachine best;
    for (int c = 0; c < static_cast<int>(res.config_counts.size()); ++c) {
        MachineScan scan = scan_config(res, c, remaining, caps);
        if (best.config < 0 || scan.throughput > best.throughput) {
            best.config = c;
            best.slot_jobs = std::move(scan.slot_jobs);
            best.throughput = scan.throughput;
        }
    }
    return best;
}

Schedule highest_throughput_first(const Instance& inst, const Caps* caps,
                                  std::vector<long long> remaining, long long* batches_out) {
    Resolved res = resolve(inst);
    if (static_cast<int>(remaining.size()) != res.num_jobs)
        fail(ErrorKind::invalid, "one remaining-demand entry per job required");

    Caps cap_state;
    if (caps && !caps->unbounded()) cap_state = *caps;

    Schedule sched;
    long long batches = 0;
    const long long batch_guard =
        4LL * std::max(1, res.num_jobs) * std::max(1, res.num_blocks) + 8;

    while (std::accumulate(remaining.begin(), remaining.end(), 0LL) > 0) {
        if (++batches > batch_guard)
            fail(ErrorKind::internal, "placement loop exceeded its batch bound");
        ThroughputMachine mu =
            max_throughput_machine(res, remaining, cap_state.unbounded() ? nullptr : &cap_state);
        if (mu.throughput <= 0) fail(ErrorKind::infeasible, "stuck: no machine makes progress");

        // Per-job contribution of one copy of this machine, and the largest
        // single-block step among the blocks it assigns to the job.
        std::vector<long long> contribution(static_cast<size_t>(res.num_jobs), 0);
        std::vector<long long> largest_step(static_cast<size_t>(res.num_jobs), 0);
        std::vector<std::vector<long long>> used(
            static_cast<size_t>(res.num_blocks), std::vector<long long>(static_cast<size_t>(res.num_jobs), 0));
        {
            size_t slot = 0;
            const auto& counts = res.config_counts[static_cast<size_t>(mu.config)];
            for (int i = 0; i < res.num_blocks; ++i)
                for (long long c = 0; c < counts[static_cast<size_t>(i)]; ++c, ++slot) {
                    int j = mu.slot_jobs[slot];
                    if (j < 0) continue;
                    long long fv = res.f[static_cast<size_t>(j)][static_cast<size_t>(i)];
                    contribution[static_cast<size_t>(j)] += fv;
                    largest_step[static_cast<size_t>(j)] = std::max(
                        largest_step[static_cast<size_t>(j)],
                        std::min(fv, remaining[static_cast<size_t>(j)]));
                    used[static_cast<size_t>(i)][static_cast<size_t>(j)] += 1;
                }
        }

        // Replicate until some job on the machine drops below its largest
        // single-block step (or a cap runs dry).
        long long batch = -1;
        for (int j = 0; j < res.num_jobs; ++j) {
            if (contribution[static_cast<size_t>(j)] <= 0) continue;
            long long gap = remaining[static_cast<size_t>(j)] - largest_step[static_cast<size_t>(j)];
            long long a = gap / contribution[static_cast<size_t>(j)] + 1;
            batch = batch < 0 ? a : std::min(batch, a);
        }
        if (batch < 1) fail(ErrorKind::internal, "empty placement batch");
        if (!cap_state.unbounded()) {
            for (int i = 0; i < res.num_blocks; ++i)
                for (int j = 0; j < res.num_jobs; ++j) {
                    long long u = used[static_cast<size_t>(i)][static_cast<size_t>(j)];
                    if (u > 0)
                        batch = std::min(batch,
                                         cap_state.limit[static_cast<size_t>(i)][static_cast<size_t>(j)] / u);
                }
            batch = std::max(batch, 1LL);
        }

        sched.machines.push_back(make_machine(res, mu.config, mu.slot_jobs, batch));
        for (int j = 0; j < res.num_jobs; ++j)
            remaining[static_cast<size_t>(j)] = std::max(
                0LL, remaining[static_cast<size_t>(j)] - batch * contribution[static_cast<size_t>(j)]);
        if (!cap_state.unbounded())
            for (int i = 0; i < res.num_blocks; ++i)
                for (int j = 0; j < res.num_jobs; ++j)
                    cap_state.limit[static_cast<size_t>(i)][static_cast<size_t>(j)] -=
                        batch * used[static_cast<size_t>(i)][static_cast<size_t>(j)];
    }

    if (batches_out) *batches_out = batches;
    return merge_machines(sched);
}

Schedule multiset_multicover_greedy(const std::vector<long long>& requirements, const Instance& inst) {
    Resolved res = resolve(inst);
    if (static_cast<int>(requirements.size()) != res.num_blocks)
        fail(ErrorKind::invalid, "one requirement per block type required");
    for (int i = 0; i < res.num_blocks; ++i) {
        if (requirements[static_cast<size_t>(i)] <= 0) continue;
        bool coverable = false;
        for (const auto& counts : res.config_counts)
            coverable = coverable || counts[static_cast<size_t>(i)] > 0;
        if (!coverable)
            fail(ErrorKind::infeasible, "block type '" + res.block_names[static_cast<size_t>(i)] +
                                            "' appears in no configuration");
    }

    std::vector<long long> residual = requirements;
    Schedule sched;
    while (std::accumulate(residual.begin(), residual.end(), 0LL) > 0) {
        int best = -1;
        long long best_cover = 0;
        for (int c = 0; c < static_cast<int>(res.config_counts.size()); ++c) {
            long long cover = 0;
            for (int i = 0; i < res.num_blocks; ++i)
                cover += std::min(res.config_counts[static_cast<size_t>(c)][static_cast<size_t>(i)],
                                  residual[static_cast<size_t>(i)]);
            if (cover > best_cover) {
                best_cover = cover;
                best = c;
            }
        }
        if (best < 0) fail(ErrorKind::internal, "cover stalled with positive residuals");
        for (int i = 0; i < res.num_blocks; ++i)
            residual[static_cast<size_t>(i)] = std::max(
                0LL, residual[static_cast<size_t>(i)] -
                         res.config_counts[static_cast<size_t>(best)][static_cast<size_t>(i)]);
        sched.machines.push_back(make_machine(res, best, {}, 1));
    }
    return merge_machines(sched);
}

Schedule solve_greedy_log(const Instance& inst) {
    if (inst.kind != InstanceKind::combinatorial)
        fail(ErrorKind::kind_mismatch, "greedy-log needs a combinatorial instance");
    Resolved res = resolve(inst);
    CmsLp cms_lp = build_cms_lp(inst);
    BasicSolution sol = solve_min(cms_lp.lp);
    if (sol.status == LpStatus::infeasible)
        fail(ErrorKind::infeasible, "covering LP is infeasible");
    if (sol.status != LpStatus::optimal) fail(ErrorKind::internal, "covering LP did not optimize");

    std::vector<std::vector<Rat>> xstar(
        static_cast<size_t>(res.num_blocks), std::vector<Rat>(static_cast<size_t>(res.num_jobs)));
    for (int i = 0; i < res.num_blocks; ++i)
        for (int j = 0; j < res.num_jobs; ++j)
            xstar[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                sol.values[static_cast<size_t>(cms_lp.x(i, j))];
    SplitSolution split = split_lp_solution(xstar, inst);

    // Integer parts: cover the block requirements, then hand blocks to jobs in
    // job order consistent with the split counts.
    Schedule s1;
    std::vector<long long> requirements(static_cast<size_t>(res.num_blocks), 0);
    for (int i = 0; i < res.num_blocks; ++i)
        for (int j = 0; j < res.num_jobs; ++j)
            requirements[static_cast<size_t>(i)] +=
                split.integer_part[static_cast<size_t>(i)][static_cast<size_t>(j)];
    if (std::accumulate(requirements.begin(), requirements.end(), 0LL) > 0) {
        Schedule cover = multiset_multicover_greedy(requirements, inst);
        auto need = split.integer_part;
        for (const auto& use : cover.machines) {
            for (long long copy = 0; copy < use.multiplicity; ++copy) {
                MachineUse machine = use;
                machine.multiplicity = 1;
                for (auto& slot : machine.assignment) {
                    int i = -1;
                    for (int bi = 0; bi < res.num_blocks; ++bi)
                        if (res.block_names[static_cast<size_t>(bi)] == slot.block) i = bi;
                    for (int j = 0; j < res.num_jobs; ++j) {
                        if (need[static_cast<size_t>(i)][static_cast<size_t>(j)] > 0) {
                            need[static_cast<size_t>(i)][static_cast<size_t>(j)] -= 1;
                            slot.job = res.job_ids[static_cast<size_t>(j)];
                            break;
                        }
                    }
                }
                s1.machines.push_back(std::move(machine));
            }
        }
        s1 = merge_machines(s1);
    }

    // Fractional parts: cap block use per pair at the rounded-up survivors and
    // chase the induced demands with the throughput greedy.
    Caps caps;
    caps.limit.assign(static_cast<size_t>(res.num_blocks),
                      std::vector<long long>(static_cast<size_t>(res.num_jobs), 0));
    std::vector<long long> fractional_demand(static_cast<size_t>(res.num_jobs), 0);
    for (int j = 0; j < res.num_jobs; ++j) {
        Rat covered(0);
        for (int i = 0; i < res.num_blocks; ++i) {
            const Rat& xh = split.fractional_part[static_cast<size_t>(i)][static_cast<size_t>(j)];
            caps.limit[static_cast<size_t>(i)][static_cast<size_t>(j)] = ceil_ll(xh);
            covered += xh * res.f[static_cast<size_t>(j)][static_cast<size_t>(i)];
        }
        fractional_demand[static_cast<size_t>(j)] =
            std::min(res.demand[static_cast<size_t>(j)], ceil_ll(covered));
    }
    Schedule s2;
    if (std::accumulate(fractional_demand.begin(), fractional_demand.end(), 0LL) > 0)
        s2 = highest_throughput_first(inst, &caps, fractional_demand);

    Schedule out;
    for (const auto& use : s1.machines) {
        out.machines.push_back(use);
        out.machines.back().multiplicity *= 2;
    }
    for (const auto& use : s2.machines) {
        out.machines.push_back(use);
        out.machines.back().multiplicity *= 2;
    }
    return out;
}

}  // namespace cms
