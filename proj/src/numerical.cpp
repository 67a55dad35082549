#include "cms/numerical.hpp"

#include "cms/errors.hpp"

#include <algorithm>
#include <numeric>

namespace cms {

long long BlockMultiset::total_size() const {
    long long total = 0;
    for (size_t s = 0; s < counts.size(); ++s) total += counts[s] * static_cast<long long>(s + 1);
    return total;
}

long long BlockMultiset::total_blocks() const {
    return std::accumulate(counts.begin(), counts.end(), 0LL);
}

long long BlockMultiset::total_value(const std::vector<long long>& f_row) const {
    long long total = 0;
    for (size_t s = 0; s < counts.size(); ++s) total += counts[s] * f_row[s];
    return total;
}

namespace {

constexpr long long exact_demand_limit = 100'000;

void check_row(const std::vector<long long>& f_row, long long demand, long long k) {
    if (k < 1) fail(ErrorKind::invalid, "capacity must be positive");
    if (static_cast<long long>(f_row.size()) != k)
        fail(ErrorKind::invalid, "one table entry per size 1..k required");
    if (demand < 0) fail(ErrorKind::invalid, "negative demand");
    if (demand == 0) return;
    bool any = false;
    for (long long v : f_row) any = any || v > 0;
    if (!any) fail(ErrorKind::infeasible, "positive demand with an all-zero table");
}

}  // namespace

BlockMultiset min_knapsack_exact(const std::vector<long long>& f_row, long long demand, long long k) {
    check_row(f_row, demand, k);
    BlockMultiset out;
    out.counts.assign(static_cast<size_t>(k), 0);
    if (demand == 0) return out;
    if (demand > 20'000'000) fail(ErrorKind::guard_exceeded, "demand too large for the exact dp");

    // best[v] = min cost to reach coverage >= v
    const long long inf = std::numeric_limits<long long>::max() / 4;
    std::vector<long long> best(static_cast<size_t>(demand + 1), inf);
    best[0] = 0;
    for (long long v = 1; v <= demand; ++v) {
        for (long long s = 1; s <= k; ++s) {
            long long fv = f_row[static_cast<size_t>(s - 1)];
            if (fv <= 0) continue;
            long long prev = std::max(0LL, v - fv);
            if (best[static_cast<size_t>(prev)] + s < best[static_cast<size_t>(v)])
                best[static_cast<size_t>(v)] = best[static_cast<size_t>(prev)] + s;
        }
    }

    // Reconstruct, preferring the smallest size consistent with the optimum.
    long long v = demand;
    while (v > 0) {
        bool stepped = false;
        for (long long s = 1; s <= k && !stepped; ++s) {
            long long fv = f_row[static_cast<size_t>(s - 1)];
            if (fv <= 0) continue;
            long long prev = std::max(0LL, v - fv);
            if (best[static_cast<size_t>(prev)] + s == best[static_cast<size_t>(v)]) {
                out.counts[static_cast<size_t>(s - 1)] += 1;
                v = prev;
                stepped = true;
            }
        }
        if (!stepped) fail(ErrorKind::internal, "dp reconstruction stalled");
    }
    return out;
}

BlockMultiset min_knapsack_fptas(const std::vector<long long>& f_row, long long demand, long long k,
                                 const Rat& eps) {
    if (eps <= 0) fail(ErrorKind::invalid, "eps must be positive");
    check_row(f_row, demand, k);
    if (demand <= exact_demand_limit) return min_knapsack_exact(f_row, demand, k);

    // Densest block h: best value per unit size, smallest size on ties.
    long long h = 0;
    for (long long s = 1; s <= k; ++s) {
        long long fv = f_row[static_cast<size_t>(s - 1)];
        if (fv <= 0) continue;
        if (h == 0 || Rat(fv, s) > Rat(f_row[static_cast<size_t>(h - 1)], h)) h = s;
    }
    BlockMultiset dense;
    dense.counts.assign(static_cast<size_t>(k), 0);
    long long fh = f_row[static_cast<size_t>(h - 1)];
    dense.counts[static_cast<size_t>(h - 1)] = (demand + fh - 1) / fh;

    // If the optimum is small (<= k/eps), a cost-bounded exact table finds it;
    // otherwise one h-block of slack makes the dense solution (1+eps)-close.
    long long cost_cap = ceil_ll(Rat(k) / eps) + k;
    const long long neg = -1;
    std::vector<long long> reach(static_cast<size_t>(cost_cap + 1), neg);  // max coverage per cost
    reach[0] = 0;
    std::vector<long long> choice(static_cast<size_t>(cost_cap + 1), 0);
    for (long long c = 1; c <= cost_cap; ++c) {
        for (long long s = 1; s <= std::min(c, k); ++s) {
            long long fv = f_row[static_cast<size_t>(s - 1)];
            if (fv <= 0) continue;
            long long base = reach[static_cast<size_t>(c - s)];
            if (base < 0) continue;
            long long cover = std::min(demand, base + fv);
            if (cover > reach[static_cast<size_t>(c)]) {
                reach[static_cast<size_t>(c)] = cover;
                choice[static_cast<size_t>(c)] = s;
            }
        }
    }
    for (long long c = 1; c <= cost_cap; ++c) {
        if (reach[static_cast<size_t>(c)] < demand) continue;
        if (c >= dense.total_size()) break;
        BlockMultiset cheap;
        cheap.counts.assign(static_cast<size_t>(k), 0);
        long long cur = c;
        while (cur > 0 && reach[static_cast<size_t>(cur)] > 0) {
            long long s = choice[static_cast<size_t>(cur)];
            if (s == 0) break;
            cheap.counts[static_cast<size_t>(s - 1)] += 1;
            cur -= s;
        }
        if (cheap.total_value(f_row) >= demand) return cheap;
        break;
    }
    return dense;
}

Schedule pack_blocks(const std::vector<BlockMultiset>& per_job, const Instance& inst) {
    if (inst.kind != InstanceKind::numerical)
        fail(ErrorKind::kind_mismatch, "block packing needs a numerical instance");
    Resolved res = resolve(inst);
    if (per_job.size() != static_cast<size_t>(res.num_jobs))
        fail(ErrorKind::invalid, "one block multiset per job required");
    const long long k = res.capacity;

    struct Block {
        long long size;
        int job;
    };
    std::vector<Block> blocks;
    for (int j = 0; j < res.num_jobs; ++j) {
        const auto& counts = per_job[static_cast<size_t>(j)].counts;
        if (static_cast<long long>(counts.size()) != k)
            fail(ErrorKind::invalid, "block multiset does not match the capacity");
        for (long long s = k; s >= 1; --s)
            for (long long c = 0; c < counts[static_cast<size_t>(s - 1)]; ++c)
                blocks.push_back({s, j});
    }
    std::stable_sort(blocks.begin(), blocks.end(), [](const Block& a, const Block& b) {
        if (a.size != b.size) return a.size > b.size;
        return a.job < b.job;
    });

    struct Machine {
        long long used = 0;
        std::vector<Block> content;
    };
    std::vector<Machine> machines;
    for (const auto& block : blocks) {
        bool placed = false;
        for (auto& machine : machines) {
            if (machine.used + block.size <= k) {
                machine.used += block.size;
                machine.content.push_back(block);
                placed = true;
                break;
            }
        }
        if (!placed) machines.push_back({block.size, {block}});
    }

    Schedule sched;
    for (const auto& machine : machines) {
        MachineUse use;
        use.multiplicity = 1;
        for (const auto& block : machine.content) {
            use.sizes.push_back(block.size);
            use.assignment.push_back({std::to_string(block.size),
                                      res.job_ids[static_cast<size_t>(block.job)]});
        }
        // pad to the exact capacity with idle unit blocks
        for (long long fill = machine.used; fill < k; ++fill) {
            use.sizes.push_back(1);
            use.assignment.push_back({"1", std::string()});
        }
        sched.machines.push_back(std::move(use));
    }
    return merge_machines(sched);
}

NumericalResult solve_numerical(const Instance& inst, const Rat& eps, bool parallel) {
    if (inst.kind != InstanceKind::numerical)
        fail(ErrorKind::kind_mismatch, "numerical solver needs a numerical instance");
    if (eps <= 0) fail(ErrorKind::invalid, "eps must be positive");
    Resolved res = resolve(inst);

    std::vector<BlockMultiset> per_job(static_cast<size_t>(res.num_jobs));
    std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 1) if (parallel)
    for (int j = 0; j < res.num_jobs; ++j) {
        try {
            per_job[static_cast<size_t>(j)] =
                min_knapsack_fptas(res.f[static_cast<size_t>(j)],
                                   res.demand[static_cast<size_t>(j)], res.capacity, eps);
        } catch (...) {
#pragma omp critical
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);

    NumericalResult out;
    long long chosen_size = 0;
    for (const auto& ms : per_job) chosen_size += ms.total_size();
    out.lower_bound = Rat(chosen_size) / (Rat(res.capacity) * (Rat(1) + eps));
    out.schedule = pack_blocks(per_job, inst);
    return out;
}

}  // namespace cms
