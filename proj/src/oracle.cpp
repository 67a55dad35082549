#include "cms/oracle.hpp"

#include "cms/errors.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <random>
#include <unordered_map>
#include <unordered_set>

namespace cms {

long long default_node_budget() {
    if (const char* env = std::getenv("CMS_NODE_BUDGET")) {
        char* end = nullptr;
        long long v = std::strtoll(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return 10'000'000;
}

namespace {

// All partitions of values <= capacity into sizes 1..capacity, as per-size
// count vectors. Machines never need slack below capacity filled, covering
// multisets is enough for an optimum.
std::vector<std::vector<long long>> numerical_configs(long long capacity) {
    std::vector<std::vector<long long>> out;
    std::vector<long long> counts(static_cast<size_t>(capacity), 0);
    auto rec = [&](auto&& self, long long max_size, long long left) -> void {
        if (left == 0) {
            out.push_back(counts);
            return;
        }
        for (long long s = std::min(max_size, left); s >= 1; --s) {
            counts[static_cast<size_t>(s - 1)] += 1;
            self(self, s, left - s);
            counts[static_cast<size_t>(s - 1)] -= 1;
        }
    };
    rec(rec, capacity, capacity);
    return out;
}

std::vector<std::vector<long long>> admissible_configs(const Resolved& res) {
    if (res.kind == InstanceKind::combinatorial) return res.config_counts;
    return numerical_configs(res.capacity);
}

using Vec = std::vector<long long>;

struct VecHash {
    size_t operator()(const Vec& v) const {
        size_t h = 1469598103934665603ull;
        for (long long x : v) {
            h ^= static_cast<size_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return h;
    }
};

// A single-machine option: capped per-job coverage plus the block->job counts
// realizing it.
struct Move {
    Vec coverage;
    int config = -1;
    std::vector<Vec> used;  // [block][job]
};

void keep_maximal_moves(std::vector<Move>& moves) {
    std::sort(moves.begin(), moves.end(), [](const Move& a, const Move& b) {
        long long sa = std::accumulate(a.coverage.begin(), a.coverage.end(), 0LL);
        long long sb = std::accumulate(b.coverage.begin(), b.coverage.end(), 0LL);
        if (sa != sb) return sa > sb;
        return a.coverage > b.coverage;
    });
    std::vector<Move> kept;
    for (auto& m : moves) {
        bool dominated = false;
        for (const auto& k : kept) {
            bool below = true;
            for (size_t i = 0; i < m.coverage.size() && below; ++i)
                below = m.coverage[i] <= k.coverage[i];
            if (below) {
                dominated = true;
                break;
            }
        }
        if (!dominated) kept.push_back(std::move(m));
    }
    moves = std::move(kept);
}

// Maximal coverage vectors one machine of the given configuration can deliver,
// capped at the demand ceiling `cap`, with witnesses.
std::vector<Move> machine_moves(const Resolved& res, const std::vector<long long>& counts,
                                int config, const Vec& cap, long long& budget) {
    std::vector<Move> acc(1);
    acc[0].coverage.assign(static_cast<size_t>(res.num_jobs), 0);
    acc[0].config = config;
    acc[0].used.assign(static_cast<size_t>(res.num_blocks),
                       Vec(static_cast<size_t>(res.num_jobs), 0));
    for (int i = 0; i < res.num_blocks; ++i) {
        long long c = counts[static_cast<size_t>(i)];
        if (c == 0) continue;
        // distributions of c identical blocks of type i over the jobs
        std::vector<std::pair<Vec, Vec>> per_type;  // (coverage, counts per job)
        Vec counts_per_job(static_cast<size_t>(res.num_jobs), 0);
        auto rec = [&](auto&& self, int job, long long left) -> void {
            if (job == res.num_jobs) {
                if (--budget < 0) return;
                Vec contrib(static_cast<size_t>(res.num_jobs), 0);
                for (int j = 0; j < res.num_jobs; ++j)
                    contrib[static_cast<size_t>(j)] =
                        std::min(cap[static_cast<size_t>(j)],
                                 counts_per_job[static_cast<size_t>(j)] *
                                     res.f[static_cast<size_t>(j)][static_cast<size_t>(i)]);
                per_type.push_back({std::move(contrib), counts_per_job});
                return;
            }
            for (long long take = left; take >= 0; --take) {
                counts_per_job[static_cast<size_t>(job)] = take;
                self(self, job + 1, left - take);
                if (budget < 0) return;
            }
            counts_per_job[static_cast<size_t>(job)] = 0;
        };
        rec(rec, 0, c);
        if (budget < 0) return {};

        std::vector<Move> next;
        for (const auto& a : acc)
            for (const auto& [cov, used] : per_type) {
                if (--budget < 0) return {};
                Move m = a;
                for (int j = 0; j < res.num_jobs; ++j) {
                    m.coverage[static_cast<size_t>(j)] =
                        std::min(cap[static_cast<size_t>(j)],
                                 m.coverage[static_cast<size_t>(j)] + cov[static_cast<size_t>(j)]);
                    m.used[static_cast<size_t>(i)][static_cast<size_t>(j)] = used[static_cast<size_t>(j)];
                }
                next.push_back(std::move(m));
            }
        keep_maximal_moves(next);
        acc = std::move(next);
    }
    return acc;
}

ExactSchedule search_min_machines(const Instance& inst, long long node_budget, bool want_schedule) {
    Resolved res = resolve(inst);
    ExactSchedule out;
    OracleResult& result = out.result;
    long long budget = node_budget;

    // Identical jobs are interchangeable; sorting their remaining demands
    // collapses symmetric states. Counting only: a witness schedule needs the
    // raw labels.
    std::vector<std::vector<int>> classes;
    if (!want_schedule) {
        std::map<std::pair<long long, std::vector<long long>>, std::vector<int>> grouped;
        for (int j = 0; j < res.num_jobs; ++j)
            grouped[{res.demand[static_cast<size_t>(j)], res.f[static_cast<size_t>(j)]}].push_back(j);
        for (auto& [key, members] : grouped)
            if (members.size() > 1) classes.push_back(std::move(members));
    }
    auto canonicalize = [&](Vec& v) {
        for (const auto& members : classes) {
            std::vector<long long> vals;
            vals.reserve(members.size());
            for (int j : members) vals.push_back(v[static_cast<size_t>(j)]);
            std::sort(vals.begin(), vals.end(), std::greater<>());
            for (size_t p = 0; p < members.size(); ++p)
                v[static_cast<size_t>(members[p])] = vals[p];
        }
    };

    Vec start(res.demand);
    canonicalize(start);
    if (std::accumulate(start.begin(), start.end(), 0LL) == 0) {
        result.status = OracleStatus::found;
        result.machines = 0;
        return out;
    }

    const auto configs = admissible_configs(res);
    // A positive-demand job no block can serve is a proof of infeasibility.
    for (int j = 0; j < res.num_jobs; ++j) {
        if (res.demand[static_cast<size_t>(j)] == 0) continue;
        bool servable = false;
        for (const auto& counts : configs)
            for (int i = 0; i < res.num_blocks; ++i)
                if (counts[static_cast<size_t>(i)] > 0 &&
                    res.f[static_cast<size_t>(j)][static_cast<size_t>(i)] > 0)
                    servable = true;
        if (!servable) {
            result.status = OracleStatus::infeasible;
            return out;
        }
    }

    std::vector<Move> moves;
    for (size_t c = 0; c < configs.size(); ++c) {
        auto ms = machine_moves(res, configs[c], static_cast<int>(c), start, budget);
        if (budget < 0) {
            result.nodes = node_budget;
            return out;
        }
        for (auto& m : ms) moves.push_back(std::move(m));
    }
    keep_maximal_moves(moves);
    std::erase_if(moves, [](const Move& m) {
        return std::accumulate(m.coverage.begin(), m.coverage.end(), 0LL) == 0;
    });
    if (moves.empty()) {
        result.status = OracleStatus::infeasible;
        return out;
    }

    // Level-by-level over the machine count; the first level that clears all
    // demand is optimal. Parents are kept for the witness.
    std::vector<Vec> states = {start};
    std::vector<std::pair<int, int>> parent = {{-1, -1}};  // (state, move)
    std::unordered_map<Vec, int, VecHash> seen;
    seen[start] = 0;
    std::vector<int> frontier = {0};

    auto machine_of = [&](const Move& m) {
        std::vector<int> slot_jobs;
        const auto& counts = configs[static_cast<size_t>(m.config)];
        for (int i = 0; i < res.num_blocks; ++i) {
            long long placed = 0;
            for (int j = 0; j < res.num_jobs; ++j)
                for (long long t = 0; t < m.used[static_cast<size_t>(i)][static_cast<size_t>(j)];
                     ++t, ++placed)
                    slot_jobs.push_back(j);
            for (; placed < counts[static_cast<size_t>(i)]; ++placed) slot_jobs.push_back(-1);
        }
        int config_index = res.kind == InstanceKind::combinatorial ? m.config : -1;
        return make_machine_from_counts(res, config_index, counts, slot_jobs, 1);
    };

    auto finish = [&](int state_idx, int move_idx, long long level) {
        result.status = OracleStatus::found;
        result.machines = level;
        result.nodes = node_budget - budget;
        if (!want_schedule) return;
        Schedule sched;
        sched.machines.push_back(machine_of(moves[static_cast<size_t>(move_idx)]));
        int s = state_idx;
        while (parent[static_cast<size_t>(s)].first >= 0) {
            sched.machines.push_back(
                machine_of(moves[static_cast<size_t>(parent[static_cast<size_t>(s)].second)]));
            s = parent[static_cast<size_t>(s)].first;
        }
        out.schedule = merge_machines(sched);
    };

    for (long long level = 1;; ++level) {
        std::vector<int> next;
        for (int state_idx : frontier) {
            const Vec state = states[static_cast<size_t>(state_idx)];
            for (size_t mi = 0; mi < moves.size(); ++mi) {
                if (--budget < 0) {
                    result.nodes = node_budget;
                    return out;
                }
                Vec reduced(state.size());
                bool done = true;
                for (size_t j = 0; j < state.size(); ++j) {
                    reduced[j] = std::max(0LL, state[j] - moves[mi].coverage[j]);
                    done = done && reduced[j] == 0;
                }
                if (done) {
                    finish(state_idx, static_cast<int>(mi), level);
                    return out;
                }
                canonicalize(reduced);
                auto [it, fresh] = seen.insert({reduced, static_cast<int>(states.size())});
                if (fresh) {
                    states.push_back(std::move(reduced));
                    parent.push_back({state_idx, static_cast<int>(mi)});
                    next.push_back(it->second);
                }
            }
        }
        if (next.empty()) {
            // nothing new and demand never hit zero: unreachable
            result.status = OracleStatus::infeasible;
            result.nodes = node_budget - budget;
            return out;
        }
        frontier = std::move(next);
    }
}

}  // namespace

OracleResult exact_min_machines(const Instance& inst, long long node_budget) {
    return search_min_machines(inst, node_budget, false).result;
}

ExactSchedule exact_schedule(const Instance& inst, long long node_budget) {
    return search_min_machines(inst, node_budget, true);
}

long long brute_max_throughput(const Instance& inst, const std::vector<long long>& remaining,
                               const Configuration& sigma) {
    Resolved res = resolve(inst);
    if (sigma.size() > 6) fail(ErrorKind::guard_exceeded, "configuration too large for brute force");

    std::vector<int> slots;
    std::map<std::string, int> index;
    for (int i = 0; i < res.num_blocks; ++i) index[res.block_names[static_cast<size_t>(i)]] = i;
    for (const auto& [name, count] : sigma.counts) {
        auto it = index.find(name);
        if (it == index.end()) fail(ErrorKind::invalid, "unknown block type '" + name + "'");
        for (long long c = 0; c < count; ++c) slots.push_back(it->second);
    }

    long long best = 0;
    std::vector<int> pick(slots.size(), -1);
    auto rec = [&](auto&& self, size_t slot) -> void {
        if (slot == slots.size()) {
            std::vector<long long> got(static_cast<size_t>(res.num_jobs), 0);
            for (size_t s = 0; s < slots.size(); ++s)
                if (pick[s] >= 0)
                    got[static_cast<size_t>(pick[s])] +=
                        res.f[static_cast<size_t>(pick[s])][static_cast<size_t>(slots[s])];
            long long value = 0;
            for (int j = 0; j < res.num_jobs; ++j)
                value += std::min(got[static_cast<size_t>(j)], remaining[static_cast<size_t>(j)]);
            best = std::max(best, value);
            return;
        }
        for (int j = -1; j < res.num_jobs; ++j) {
            pick[slot] = j;
            self(self, slot + 1);
        }
    };
    rec(rec, 0);
    return best;
}

long long brute_max_throughput(const Instance& inst, const std::vector<long long>& remaining,
                               int config_index) {
    return brute_max_throughput(inst, remaining,
                                inst.configurations.at(static_cast<size_t>(config_index)));
}

namespace {

// Deterministic draw in [lo, hi]; the standard distributions are not pinned
// across platforms, plain modulo is.
long long draw(std::mt19937_64& rng, long long lo, long long hi) {
    if (hi <= lo) return lo;
    return lo + static_cast<long long>(rng() % static_cast<unsigned long long>(hi - lo + 1));
}

}  // namespace

Instance gen_random(const GenParams& params) {
    std::mt19937_64 rng(params.seed);
    Instance inst;
    inst.kind = InstanceKind::combinatorial;
    for (long long i = 0; i < params.blocks; ++i) inst.blocks.push_back("b" + std::to_string(i + 1));

    for (long long c = 0; c < params.configs; ++c) {
        Configuration cfg;
        long long size = draw(rng, 1, params.max_config_size);
        for (long long s = 0; s < size; ++s) {
            const auto& name = inst.blocks[static_cast<size_t>(draw(rng, 0, params.blocks - 1))];
            cfg.counts[name] += 1;
        }
        inst.configurations.push_back(std::move(cfg));
    }

    std::vector<std::string> configured;
    for (const auto& b : inst.blocks)
        for (const auto& cfg : inst.configurations)
            if (cfg.counts.count(b) && std::find(configured.begin(), configured.end(), b) ==
                                           configured.end())
                configured.push_back(b);

    for (long long j = 0; j < params.n; ++j) {
        Job job;
        job.id = "j" + std::to_string(j + 1);
        job.demand = draw(rng, 0, params.max_demand);
        for (const auto& b : inst.blocks) {
            long long v = draw(rng, 0, std::min(params.max_table, job.demand));
            if (v > 0) job.table[b] = v;
        }
        // keep generated instances feasible: a positive demand needs at least
        // one configured block with positive throughput
        if (job.demand > 0 && !configured.empty()) {
            bool servable = false;
            for (const auto& b : configured) servable = servable || job.table.count(b);
            if (!servable) {
                const auto& b = configured[static_cast<size_t>(draw(
                    rng, 0, static_cast<long long>(configured.size()) - 1))];
                job.table[b] = draw(rng, 1, std::min(params.max_table, job.demand));
            }
        }
        inst.jobs.push_back(std::move(job));
    }
    return inst;
}

Instance gen_random_numerical(const GenParams& params) {
    std::mt19937_64 rng(params.seed);
    Instance inst;
    inst.kind = InstanceKind::numerical;
    inst.capacity = params.capacity;
    for (long long j = 0; j < params.n; ++j) {
        Job job;
        job.id = "j" + std::to_string(j + 1);
        job.demand = draw(rng, 0, params.max_demand);
        for (long long s = 1; s <= params.capacity; ++s) {
            long long v = draw(rng, 0, std::min(params.max_table, job.demand));
            if (v > 0) job.table[std::to_string(s)] = v;
        }
        if (job.demand > 0 && job.table.empty())
            job.table[std::to_string(draw(rng, 1, params.capacity))] =
                draw(rng, 1, std::min(params.max_table, job.demand));
        inst.jobs.push_back(std::move(job));
    }
    return inst;
}

Instance gen_tight_greedy_family(int n) {
    if (n < 2) fail(ErrorKind::invalid, "family needs n >= 2");
    Instance inst;
    inst.kind = InstanceKind::combinatorial;
    const int k = n + 1;
    for (int i = 1; i <= k; ++i) inst.blocks.push_back(std::to_string(i));

    Configuration whole;  // one block of type k
    whole.counts[std::to_string(k)] = 1;
    inst.configurations.push_back(std::move(whole));
    Configuration split;  // one block each of types 1..n
    for (int i = 1; i <= n; ++i) split.counts[std::to_string(i)] = 1;
    inst.configurations.push_back(std::move(split));

    for (int l = 1; l <= n; ++l) {
        Job job;
        job.id = "j" + std::to_string(l);
        job.demand = 1LL << l;
        job.table[std::to_string(l)] = 1LL << (l - 1);
        job.table[std::to_string(k)] = 1LL << l;
        inst.jobs.push_back(std::move(job));
    }
    return inst;
}

}  // namespace cms
