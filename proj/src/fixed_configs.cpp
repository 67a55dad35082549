#include "cms/fixed_configs.hpp"

#include "cms/errors.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>

namespace cms {

std::vector<long long> machine_count_grid(long long total_demand, const Rat& eps) {
    if (eps <= 0) fail(ErrorKind::invalid, "eps must be positive");
    if (total_demand < 1) fail(ErrorKind::invalid, "total demand must be positive");
    std::vector<long long> grid;
    Rat power(1);
    const Rat growth = Rat(1) + eps;
    for (;;) {
        long long value = floor_ll(power);
        if (grid.empty() || grid.back() != value) grid.push_back(value);
        if (power >= total_demand) break;
        power *= growth;
    }
    return grid;
}

AssignmentGraph build_assignment_graph(const BasicSolution& sol, const FeasibilityLp& flp) {
    AssignmentGraph g;
    g.num_jobs = flp.num_jobs;
    g.block_set = flp.block_set;
    for (size_t p = 0; p < flp.block_set.size(); ++p) {
        for (int j = 0; j < flp.num_jobs; ++j) {
            const Rat& x = sol.values[static_cast<size_t>(flp.x(static_cast<int>(p), j))];
            if (x > 0) {
                g.edges.push_back({j, static_cast<int>(p)});
                g.weights.push_back(x);
            }
        }
    }
    return g;
}

namespace {

struct DisjointSet {
    std::vector<int> parent;
    explicit DisjointSet(int n) : parent(static_cast<size_t>(n)) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int v) {
        while (parent[static_cast<size_t>(v)] != v) {
            parent[static_cast<size_t>(v)] = parent[static_cast<size_t>(parent[static_cast<size_t>(v)])];
            v = parent[static_cast<size_t>(v)];
        }
        return v;
    }
    void unite(int a, int b) { parent[static_cast<size_t>(find(a))] = find(b); }
};

}  // namespace

bool check_pseudo_forest(const AssignmentGraph& g) {
    const int nodes = g.num_jobs + static_cast<int>(g.block_set.size());
    DisjointSet ds(nodes);
    for (const auto& [j, p] : g.edges) ds.unite(j, g.num_jobs + p);
    std::vector<long long> edge_count(static_cast<size_t>(nodes), 0);
    std::vector<long long> node_count(static_cast<size_t>(nodes), 0);
    for (int v = 0; v < nodes; ++v) node_count[static_cast<size_t>(ds.find(v))] += 1;
    for (const auto& [j, p] : g.edges) edge_count[static_cast<size_t>(ds.find(j))] += 1;
    for (int v = 0; v < nodes; ++v)
        if (edge_count[static_cast<size_t>(v)] > node_count[static_cast<size_t>(v)]) return false;
    return true;
}

RootedForest break_cycles_and_root(const AssignmentGraph& g, const Resolved& res) {
    const int n = g.num_jobs;
    const int nodes = n + static_cast<int>(g.block_set.size());

    std::vector<std::vector<int>> adj(static_cast<size_t>(nodes));  // edge indices
    for (size_t e = 0; e < g.edges.size(); ++e) {
        adj[static_cast<size_t>(g.edges[e].first)].push_back(static_cast<int>(e));
        adj[static_cast<size_t>(n + g.edges[e].second)].push_back(static_cast<int>(e));
    }
    auto other_end = [&](int e, int v) {
        const auto& [j, p] = g.edges[static_cast<size_t>(e)];
        return v == j ? n + p : j;
    };

    // 2-core: peel nodes of degree <= 1 until only cycles remain. In a
    // pseudo-forest the survivors are exactly the cycle nodes.
    std::vector<bool> removed_edge(g.edges.size(), false);
    std::vector<bool> peeled(static_cast<size_t>(nodes), false);
    {
        std::vector<int> deg(static_cast<size_t>(nodes));
        for (int v = 0; v < nodes; ++v)
            deg[static_cast<size_t>(v)] = static_cast<int>(adj[static_cast<size_t>(v)].size());
        std::vector<bool> gone(g.edges.size(), false);
        std::queue<int> thin;
        for (int v = 0; v < nodes; ++v)
            if (deg[static_cast<size_t>(v)] <= 1) thin.push(v);
        while (!thin.empty()) {
            int v = thin.front();
            thin.pop();
            if (peeled[static_cast<size_t>(v)]) continue;
            peeled[static_cast<size_t>(v)] = true;
            for (int e : adj[static_cast<size_t>(v)]) {
                if (gone[static_cast<size_t>(e)]) continue;
                gone[static_cast<size_t>(e)] = true;
                int u = other_end(e, v);
                if (--deg[static_cast<size_t>(u)] <= 1 && !peeled[static_cast<size_t>(u)]) thin.push(u);
            }
        }
    }

    RootedForest forest;
    forest.parent.assign(static_cast<size_t>(nodes), -2);  // -2 = unvisited

    DisjointSet ds(nodes);
    for (const auto& [j, p] : g.edges) ds.unite(j, n + p);

    // Per component: lowest cycle job breaks its cycle and becomes the root.
    std::map<int, int> cycle_job;  // component -> job on the unpeeled core
    for (int j = 0; j < n; ++j)
        if (!peeled[static_cast<size_t>(j)] && !adj[static_cast<size_t>(j)].empty() &&
            !cycle_job.count(ds.find(j)))
            cycle_job[ds.find(j)] = j;

    for (const auto& [component, j] : cycle_job) {
        (void)component;
        // Cycle neighbors of j: unpeeled neighbors, lowest two block positions.
        std::vector<std::pair<int, int>> cyc;  // (block position, edge)
        for (int e : adj[static_cast<size_t>(j)]) {
            int u = other_end(e, j);
            if (!peeled[static_cast<size_t>(u)]) cyc.push_back({u - n, e});
        }
        std::sort(cyc.begin(), cyc.end());
        if (cyc.size() < 2) fail(ErrorKind::internal, "cycle node with fewer than two cycle edges");
        auto [p1, e1] = cyc.front();
        auto [p2, e2] = cyc[1];
        int b1 = g.block_set[static_cast<size_t>(p1)];
        int b2 = g.block_set[static_cast<size_t>(p2)];
        Rat left = g.weights[static_cast<size_t>(e1)] * res.f[static_cast<size_t>(j)][static_cast<size_t>(b1)];
        Rat right = g.weights[static_cast<size_t>(e2)] * res.f[static_cast<size_t>(j)][static_cast<size_t>(b2)];
        removed_edge[static_cast<size_t>(left >= right ? e2 : e1)] = true;
    }

    // Root every tree: cycle jobs first, then the lowest job of each remaining
    // component, then any block-only leftovers (isolated blocks).
    std::vector<int> roots;
    for (const auto& [component, j] : cycle_job) {
        (void)component;
        roots.push_back(j);
    }
    std::vector<bool> seen(static_cast<size_t>(nodes), false);
    auto bfs_root = [&](int root) {
        std::queue<int> q;
        q.push(root);
        seen[static_cast<size_t>(root)] = true;
        forest.parent[static_cast<size_t>(root)] = -1;
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int e : adj[static_cast<size_t>(v)]) {
                if (removed_edge[static_cast<size_t>(e)]) continue;
                int u = other_end(e, v);
                if (seen[static_cast<size_t>(u)]) continue;
                seen[static_cast<size_t>(u)] = true;
                forest.parent[static_cast<size_t>(u)] = v;
                q.push(u);
            }
        }
    };
    for (int r : roots) bfs_root(r);
    for (int j = 0; j < n; ++j)
        if (!seen[static_cast<size_t>(j)]) bfs_root(j);
    for (int v = n; v < nodes; ++v)
        if (!seen[static_cast<size_t>(v)]) bfs_root(v);

    for (size_t e = 0; e < g.edges.size(); ++e) {
        if (removed_edge[e])
            forest.removed_edges.push_back(g.edges[e]);
        else {
            forest.kept_edges.push_back(g.edges[e]);
            forest.kept_weights.push_back(g.weights[e]);
        }
    }
    return forest;
}

std::vector<std::vector<long long>> round_rooted_forest(const AssignmentGraph& g,
                                                        const RootedForest& forest) {
    std::vector<std::vector<long long>> rounded(
        g.block_set.size(), std::vector<long long>(static_cast<size_t>(g.num_jobs), 0));
    for (size_t e = 0; e < forest.kept_edges.size(); ++e) {
        const auto& [j, p] = forest.kept_edges[e];
        const Rat doubled = 2 * forest.kept_weights[e];
        int block_node = g.num_jobs + p;
        bool block_is_parent = forest.parent[static_cast<size_t>(j)] == block_node;
        rounded[static_cast<size_t>(p)][static_cast<size_t>(j)] =
            block_is_parent ? floor_ll(doubled) : ceil_ll(doubled);
    }
    return rounded;
}

namespace {

struct Candidate {
    bool found = false;
    long long cost = 0;
    int mask = 0;
    std::vector<long long> counts;             // m per chosen config
    std::vector<int> configs;                  // chosen config indices
    std::vector<int> block_set;                // instance block indices
    std::vector<std::vector<long long>> x;     // [block position][job]
};

bool better(const Candidate& a, const Candidate& b) {
    if (!b.found) return a.found;
    if (!a.found) return false;
    if (a.cost != b.cost) return a.cost < b.cost;
    if (a.mask != b.mask) return a.mask < b.mask;
    return a.counts < b.counts;
}

// Scans one configuration subset: first feasible tuple in (sum, lex) order.
Candidate scan_subset(const Resolved& res, int mask, const std::vector<long long>& grid,
                      long long tuple_budget, FixedConfigStats* stats) {
    Candidate cand;
    std::vector<int> configs;
    for (int c = 0; c < static_cast<int>(res.config_counts.size()); ++c)
        if (mask & (1 << c)) configs.push_back(c);
    const int s = static_cast<int>(configs.size());

    double tuple_count = 1;
    for (int i = 0; i < s; ++i) tuple_count *= static_cast<double>(grid.size());
    if (tuple_count > static_cast<double>(tuple_budget))
        fail(ErrorKind::guard_exceeded, "machine-count grid too large; raise the tuple budget "
                                        "or lower the configuration guard");

    std::vector<int> block_set;
    for (int i = 0; i < res.num_blocks; ++i) {
        bool present = false;
        for (int c : configs)
            present = present || res.config_counts[static_cast<size_t>(c)][static_cast<size_t>(i)] > 0;
        if (present) block_set.push_back(i);
    }
    // A job this subset cannot serve at all makes every tuple infeasible.
    for (int j = 0; j < res.num_jobs; ++j) {
        if (res.demand[static_cast<size_t>(j)] == 0) continue;
        bool servable = false;
        for (int i : block_set)
            servable = servable || res.f[static_cast<size_t>(j)][static_cast<size_t>(i)] > 0;
        if (!servable) return cand;
    }

    std::vector<std::vector<long long>> tuples;
    {
        std::vector<long long> current(static_cast<size_t>(s), 0);
        std::vector<size_t> idx(static_cast<size_t>(s), 0);
        for (;;) {
            for (int i = 0; i < s; ++i) current[static_cast<size_t>(i)] = grid[idx[static_cast<size_t>(i)]];
            tuples.push_back(current);
            int pos = s - 1;
            while (pos >= 0 && ++idx[static_cast<size_t>(pos)] == grid.size()) {
                idx[static_cast<size_t>(pos)] = 0;
                --pos;
            }
            if (pos < 0) break;
        }
        std::stable_sort(tuples.begin(), tuples.end(),
                         [](const std::vector<long long>& a, const std::vector<long long>& b) {
                             long long sa = std::accumulate(a.begin(), a.end(), 0LL);
                             long long sb = std::accumulate(b.begin(), b.end(), 0LL);
                             if (sa != sb) return sa < sb;
                             return a < b;
                         });
    }

    // Feasibility depends on the supply vector alone, and shrinking supplies
    // stay infeasible, so dominated supplies skip the LP.
    std::vector<std::vector<long long>> infeasible_frontier;

    for (const auto& tuple : tuples) {
        if (stats) stats->tuples_scanned += 1;
        std::vector<long long> supply(block_set.size(), 0);
        for (size_t p = 0; p < block_set.size(); ++p)
            for (int ci = 0; ci < s; ++ci)
                supply[p] += tuple[static_cast<size_t>(ci)] *
                             res.config_counts[static_cast<size_t>(configs[static_cast<size_t>(ci)])]
                                              [static_cast<size_t>(block_set[p])];

        bool hopeless = false;
        for (int j = 0; j < res.num_jobs && !hopeless; ++j) {
            long long reachable = 0;
            for (size_t p = 0; p < block_set.size(); ++p)
                reachable += supply[p] *
                             res.f[static_cast<size_t>(j)][static_cast<size_t>(block_set[p])];
            hopeless = reachable < res.demand[static_cast<size_t>(j)];
        }
        if (hopeless) continue;
        bool dominated = false;
        for (const auto& known : infeasible_frontier) {
            bool below = true;
            for (size_t p = 0; p < supply.size() && below; ++p) below = supply[p] <= known[p];
            if (below) {
                dominated = true;
                break;
            }
        }
        if (dominated) continue;

        FeasibilityLp flp = build_feasibility_lp(res, configs, tuple);
        if (stats) stats->lp_solves += 1;
        BasicSolution sol = solve_min(flp.lp);
        if (sol.status != LpStatus::optimal) {
            std::erase_if(infeasible_frontier, [&](const std::vector<long long>& known) {
                for (size_t p = 0; p < supply.size(); ++p)
                    if (known[p] > supply[p]) return false;
                return true;
            });
            infeasible_frontier.push_back(supply);
            continue;
        }

        AssignmentGraph graph = build_assignment_graph(sol, flp);
        if (stats) {
            stats->extreme_points += 1;
            stats->pseudo_forest_ok = stats->pseudo_forest_ok && check_pseudo_forest(graph);
            stats->sparsity_ok =
                stats->sparsity_ok &&
                static_cast<long long>(graph.edges.size()) <=
                    static_cast<long long>(res.num_jobs) + static_cast<long long>(block_set.size());
        }
        if (!check_pseudo_forest(graph))
            fail(ErrorKind::internal, "extreme point did not form a pseudo-forest");

        RootedForest forest = break_cycles_and_root(graph, res);
        cand.found = true;
        cand.mask = mask;
        cand.configs = configs;
        cand.counts = tuple;
        cand.block_set = block_set;
        cand.x = round_rooted_forest(graph, forest);
        cand.cost = 0;
        for (long long m : tuple) cand.cost += 2 * m + 1;
        break;  // first feasible tuple settles this subset
    }
    return cand;
}

Schedule materialize(const Resolved& res, const Candidate& cand) {
    struct Machine {
        int config;
        std::vector<long long> free_per_block;
        std::vector<int> slot_jobs;
    };
    std::vector<Machine> machines;
    for (size_t ci = 0; ci < cand.configs.size(); ++ci) {
        int config = cand.configs[ci];
        long long copies = 2 * cand.counts[ci] + 1;
        for (long long r = 0; r < copies; ++r) {
            Machine m;
            m.config = config;
            m.free_per_block = res.config_counts[static_cast<size_t>(config)];
            m.slot_jobs.assign(static_cast<size_t>(res.config_size(config)), -1);
            machines.push_back(std::move(m));
        }
    }

    // Jobs claim their rounded block counts, largest f*x first.
    struct Claim {
        Rat weight;
        int job;
        int block_pos;
        long long count;
    };
    std::vector<Claim> claims;
    for (size_t p = 0; p < cand.block_set.size(); ++p)
        for (int j = 0; j < res.num_jobs; ++j) {
            long long count = cand.x[p][static_cast<size_t>(j)];
            if (count <= 0) continue;
            int block = cand.block_set[p];
            claims.push_back({Rat(res.f[static_cast<size_t>(j)][static_cast<size_t>(block)]) * count,
                              j, static_cast<int>(p), count});
        }
    std::stable_sort(claims.begin(), claims.end(), [](const Claim& a, const Claim& b) {
        if (a.weight != b.weight) return a.weight > b.weight;
        if (a.job != b.job) return a.job < b.job;
        return a.block_pos < b.block_pos;
    });

    for (const auto& claim : claims) {
        int block = cand.block_set[static_cast<size_t>(claim.block_pos)];
        long long left = claim.count;
        for (auto& machine : machines) {
            if (left == 0) break;
            while (left > 0 && machine.free_per_block[static_cast<size_t>(block)] > 0) {
                machine.free_per_block[static_cast<size_t>(block)] -= 1;
                // slot layout: blocks in ascending type order
                long long offset = 0;
                const auto& counts = res.config_counts[static_cast<size_t>(machine.config)];
                for (int i = 0; i < block; ++i) offset += counts[static_cast<size_t>(i)];
                long long within = counts[static_cast<size_t>(block)] -
                                   machine.free_per_block[static_cast<size_t>(block)] - 1;
                machine.slot_jobs[static_cast<size_t>(offset + within)] = claim.job;
                left -= 1;
            }
        }
        if (left > 0) fail(ErrorKind::internal, "rounded solution exceeded machine supply");
    }

    Schedule sched;
    for (const auto& machine : machines)
        sched.machines.push_back(make_machine(res, machine.config, machine.slot_jobs, 1));
    return merge_machines(sched);
}

}  // namespace

Schedule solve_fixed_configs(const Instance& inst, const FixedConfigOptions& opts,
                             FixedConfigStats* stats) {
    if (inst.kind != InstanceKind::combinatorial)
        fail(ErrorKind::kind_mismatch, "fixed-configuration search needs a combinatorial instance");
    if (opts.eps <= 0) fail(ErrorKind::invalid, "eps must be positive");
    Resolved res = resolve(inst);
    const int nc = static_cast<int>(res.config_counts.size());
    if (nc > opts.max_configs)
        fail(ErrorKind::guard_exceeded,
             "instance has " + std::to_string(nc) + " configurations, guard allows " +
                 std::to_string(opts.max_configs));
    if (nc == 0) {
        bool any = false;
        for (long long d : res.demand) any = any || d > 0;
        if (any) fail(ErrorKind::infeasible, "no configurations");
        return {};
    }

    long long total_demand = std::accumulate(res.demand.begin(), res.demand.end(), 0LL);
    if (total_demand == 0) return {};

    const std::vector<long long> grid = machine_count_grid(total_demand, opts.eps);
    const int num_masks = 1 << nc;
    std::vector<Candidate> candidates(static_cast<size_t>(num_masks));
    std::vector<FixedConfigStats> local(static_cast<size_t>(num_masks));
    std::exception_ptr error;

#pragma omp parallel for schedule(dynamic, 1) if (opts.parallel)
    for (int mask = 1; mask < num_masks; ++mask) {
        try {
            candidates[static_cast<size_t>(mask)] =
                scan_subset(res, mask, grid, opts.tuple_budget,
                            stats ? &local[static_cast<size_t>(mask)] : nullptr);
        } catch (...) {
#pragma omp critical
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);

    Candidate best;
    for (int mask = 1; mask < num_masks; ++mask)
        if (better(candidates[static_cast<size_t>(mask)], best))
            best = candidates[static_cast<size_t>(mask)];
    if (stats) {
        for (const auto& s : local) {
            stats->lp_solves += s.lp_solves;
            stats->tuples_scanned += s.tuples_scanned;
            stats->extreme_points += s.extreme_points;
            stats->pseudo_forest_ok = stats->pseudo_forest_ok && s.pseudo_forest_ok;
            stats->sparsity_ok = stats->sparsity_ok && s.sparsity_ok;
        }
    }
    if (!best.found)
        fail(ErrorKind::infeasible, "no configuration subset and machine-count guess is feasible");
    return materialize(res, best);
}

}  // namespace cms
