// End-to-end acceptance suite. Every criterion prints one PASS/FAIL line;
// the process exits nonzero if any criterion fails.

#include "cms/bench.hpp"
#include "cms/errors.hpp"
#include "cms/fixed_configs.hpp"
#include "cms/greedy.hpp"
#include "cms/io.hpp"
#include "cms/lp.hpp"
#include "cms/numerical.hpp"
#include "cms/oracle.hpp"
#include "cms/ptas.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace cms;

namespace {

struct Tally {
    long long checks = 0;
    long long failures = 0;
    std::string first_failure;

    void expect(bool ok, const std::string& what) {
        ++checks;
        if (!ok) {
            ++failures;
            if (first_failure.empty()) first_failure = what;
        }
    }
    void merge(const Tally& other) {
        checks += other.checks;
        failures += other.failures;
        if (first_failure.empty()) first_failure = other.first_failure;
    }
};

double now_ms() {
    using namespace std::chrono;
    return duration<double, std::milli>(steady_clock::now().time_since_epoch()).count();
}

int criteria_failed = 0;

void report(int id, const std::string& name, const Tally& tally, double ms,
            const std::string& extra = "") {
    bool pass = tally.failures == 0 && tally.checks > 0;
    if (!pass) ++criteria_failed;
    std::printf("CRITERION %d %-4s %-22s checks=%lld failures=%lld time=%.0fms%s%s\n", id,
                pass ? "PASS" : "FAIL", name.c_str(), tally.checks, tally.failures, ms,
                extra.empty() ? "" : " ", extra.c_str());
    if (!pass && !tally.first_failure.empty())
        std::printf("             first failure: %s\n", tally.first_failure.c_str());
    std::fflush(stdout);
}

constexpr int combinatorial_trials = 500;
constexpr int numerical_trials = 500;

Instance combinatorial_case(int t) {
    GenParams params;
    params.n = 1 + (t % 5);
    params.blocks = 1 + (t % 3);
    params.configs = 1 + ((t / 2) % 3);
    params.max_demand = 10;
    params.max_table = 5;
    params.seed = 1000 + static_cast<unsigned long long>(t);
    return gen_random(params);
}

Instance numerical_case(int t) {
    GenParams params;
    params.n = 1 + (t % 5);
    params.capacity = 2 + (t % 4);
    params.max_demand = 12;
    params.max_table = 6;
    params.seed = 2000 + static_cast<unsigned long long>(t);
    return gen_random_numerical(params);
}

Instance unit_small_jobs(int n) {
    Instance inst;
    inst.blocks = {"b1"};
    Configuration cfg;
    cfg.counts["b1"] = 1;
    inst.configurations = {cfg};
    for (int j = 1; j <= n; ++j) {
        Job job;
        job.id = "j" + std::to_string(j);
        job.demand = 1;
        job.table["b1"] = 1;
        inst.jobs.push_back(job);
    }
    return inst;
}

// Criteria 1, 2, 4, 5 share one pass over the combinatorial corpus, and
// criteria 1, 7 one pass over the numerical corpus.
struct CorpusResults {
    Tally feasibility;   // criterion 1
    Tally lp_bound;      // criterion 2
    Tally pseudo;        // criterion 4
    Tally fixed_bound;   // criterion 5
    Tally numeric_bound; // criterion 7 (end-to-end part)
    long long ptas_guard_skips = 0;
};

CorpusResults run_corpus() {
    std::vector<CorpusResults> per(combinatorial_trials + numerical_trials);
    const Rat half(1, 2);
    const Rat quarter(1, 4);

#pragma omp parallel for schedule(dynamic, 4)
    for (int t = 0; t < combinatorial_trials + numerical_trials; ++t) {
        CorpusResults& r = per[static_cast<size_t>(t)];
        if (t < combinatorial_trials) {
            Instance inst = combinatorial_case(t);
            std::string id = "c" + std::to_string(t);
            OracleResult oracle = exact_min_machines(inst);
            r.feasibility.expect(oracle.ok(), id + ": oracle did not finish");
            if (!oracle.ok()) continue;

            // exact rational comparison of the relaxation against the optimum
            CmsLp clp = build_cms_lp(inst);
            BasicSolution lp = solve_min(clp.lp);
            r.lp_bound.expect(lp.status == LpStatus::optimal, id + ": relaxation did not solve");
            if (lp.status == LpStatus::optimal)
                r.lp_bound.expect(lp.objective_value <= Rat(oracle.machines),
                                  id + ": relaxation above the optimum");

            Schedule greedy = solve_greedy_log(inst);
            r.feasibility.expect(validate_schedule(inst, greedy).empty(),
                                 id + ": greedy-log schedule invalid");

            FixedConfigOptions opts;
            opts.eps = half;
            FixedConfigStats stats;
            Schedule fixed = solve_fixed_configs(inst, opts, &stats);
            r.feasibility.expect(validate_schedule(inst, fixed).empty(),
                                 id + ": fixed-config schedule invalid");
            long long total = 0;
            for (const auto& job : inst.jobs) total += job.demand;
            if (total > 0) {
                r.pseudo.expect(stats.extreme_points > 0, id + ": no extreme point seen");
                r.pseudo.expect(stats.pseudo_forest_ok, id + ": pseudo-forest violated");
                r.pseudo.expect(stats.sparsity_ok, id + ": nonzero bound violated");
            } else {
                r.pseudo.expect(true, "");
            }
            long long c = cost(fixed);
            long long nc = static_cast<long long>(inst.configurations.size());
            r.fixed_bound.expect(c <= 3 * oracle.machines + nc,
                                 id + ": fixed above 2(1+eps)opt+|C|");
            r.fixed_bound.expect(c <= 4 * oracle.machines, id + ": fixed above (3+2eps)opt");

            try {
                Schedule ptas = solve_ptas(inst, half);
                r.feasibility.expect(validate_schedule(inst, ptas).empty(),
                                     id + ": ptas schedule invalid");
            } catch (const CmsError& e) {
                if (e.kind() == ErrorKind::guard_exceeded)
                    r.ptas_guard_skips += 1;
                else
                    r.feasibility.expect(false, id + std::string(": ptas error: ") + e.what());
            }

            ExactSchedule es = exact_schedule(inst);
            r.feasibility.expect(es.result.ok() && validate_schedule(inst, es.schedule).empty(),
                                 id + ": exact witness invalid");
        } else {
            int u = t - combinatorial_trials;
            Instance inst = numerical_case(u);
            std::string id = "n" + std::to_string(u);
            OracleResult oracle = exact_min_machines(inst);
            r.feasibility.expect(oracle.ok(), id + ": oracle did not finish");
            if (!oracle.ok()) continue;

            NumericalResult result = solve_numerical(inst, quarter);
            r.feasibility.expect(validate_schedule(inst, result.schedule).empty(),
                                 id + ": numerical schedule invalid");
            r.numeric_bound.expect(
                Rat(cost(result.schedule)) <= Rat(1) + Rat(5, 2) * Rat(oracle.machines),
                id + ": numerical above 1+2(1+eps)opt");

            ExactSchedule es = exact_schedule(inst);
            r.feasibility.expect(es.result.ok() && validate_schedule(inst, es.schedule).empty(),
                                 id + ": exact witness invalid");
        }
    }

    CorpusResults merged;
    for (const auto& r : per) {
        merged.feasibility.merge(r.feasibility);
        merged.lp_bound.merge(r.lp_bound);
        merged.pseudo.merge(r.pseudo);
        merged.fixed_bound.merge(r.fixed_bound);
        merged.numeric_bound.merge(r.numeric_bound);
        merged.ptas_guard_skips += r.ptas_guard_skips;
    }
    return merged;
}

Tally half_throughput() {
    Tally tally;
    std::vector<Tally> per(1000);
#pragma omp parallel for schedule(dynamic, 8)
    for (int s = 0; s < 1000; ++s) {
        Instance inst = combinatorial_case(s % combinatorial_trials);
        Resolved res = resolve(inst);
        std::vector<long long> remaining = res.demand;
        if (s >= combinatorial_trials) {
            // a seeded partial-progress demand state
            std::mt19937_64 rng(9000 + static_cast<unsigned long long>(s));
            for (auto& d : remaining) d = d == 0 ? 0 : static_cast<long long>(rng() % (d + 1));
        }
        for (int c = 0; c < static_cast<int>(res.config_counts.size()); ++c) {
            ThroughputMachine mu = greedy_machine_on_config(res, c, remaining);
            long long brute = brute_max_throughput(inst, remaining, c);
            per[static_cast<size_t>(s)].expect(
                2 * mu.throughput >= brute,
                "state " + std::to_string(s) + " config " + std::to_string(c) + ": " +
                    std::to_string(mu.throughput) + " < half of " + std::to_string(brute));
        }
    }
    for (const auto& p : per) tally.merge(p);
    return tally;
}

Tally ptas_criterion() {
    Tally tally;
    for (int t = 0; t < 40; ++t) {
        GenParams params;
        params.n = 1 + (t % 5);
        params.blocks = 1 + (t % 2);
        params.configs = 1 + (t % 2);
        params.max_demand = 8;
        params.max_table = 4;
        params.max_config_size = 2;
        params.seed = 3000 + static_cast<unsigned long long>(t);
        Instance inst = gen_random(params);
        std::string id = "p" + std::to_string(t);

        OracleResult oracle = exact_min_machines(inst);
        tally.expect(oracle.ok(), id + ": oracle did not finish");
        if (!oracle.ok()) continue;
        tally.expect(dp_min_machines(inst) == oracle.machines, id + ": dp disagrees with exact");
        for (const Rat& eps : {Rat(1, 2), Rat(1)}) {
            Schedule sched = solve_ptas(inst, eps);
            tally.expect(validate_schedule(inst, sched).empty(), id + ": ptas schedule invalid");
            tally.expect(Rat(cost(sched)) <= (Rat(1) + eps) * Rat(oracle.machines),
                         id + ": ptas above (1+eps)opt at eps=" + rat_to_string(eps));
        }
    }

    // the relaxation path: more jobs than the enumeration threshold admits
    Instance forcing = unit_small_jobs(100);
    PtasParams params = make_ptas_params(forcing, Rat(1), 1'000'000);
    long long patterns = params.pattern_bound + 1;  // one block type
    Rat gamma = Rat(BigInt(1) << patterns);
    Rat threshold = Rat(params.k) * (Rat(1) + gamma) / params.lambda;
    tally.expect(Rat(100) > threshold, "forcing instance does not exceed the threshold");

    OracleResult oracle = exact_min_machines(forcing);
    tally.expect(oracle.ok() && oracle.machines == 100, "forcing instance optimum is not 100");
    tally.expect(dp_min_machines(forcing) == 100, "dp disagrees on the forcing instance");
    Schedule sched = solve_ptas(forcing, Rat(1));
    tally.expect(validate_schedule(forcing, sched).empty(), "forcing schedule invalid");
    tally.expect(Rat(cost(sched)) <= Rat(2) * Rat(100), "forcing cost above (1+eps)opt");
    return tally;
}

Tally knapsack_criterion() {
    Tally tally;
    std::mt19937_64 rng(4000);
    for (int trial = 0; trial < 1000; ++trial) {
        long long k = 1 + static_cast<long long>(rng() % 5);
        long long demand = static_cast<long long>(rng() % 13);
        std::vector<long long> f_row;
        bool any = false;
        for (long long s = 1; s <= k; ++s) {
            long long v = std::min<long long>(static_cast<long long>(rng() % 7), demand);
            f_row.push_back(v);
            any = any || v > 0;
        }
        if (demand > 0 && !any) f_row[static_cast<size_t>(rng() % k)] = std::max(1LL, demand / 2);
        BlockMultiset exact = min_knapsack_exact(f_row, demand, k);
        BlockMultiset approx = min_knapsack_fptas(f_row, demand, k, Rat(1, 4));
        tally.expect(approx.total_value(f_row) >= demand,
                     "trial " + std::to_string(trial) + ": approx does not cover");
        tally.expect(Rat(4) * Rat(approx.total_size()) <= Rat(5) * Rat(exact.total_size()) ||
                         exact.total_size() == 0,
                     "trial " + std::to_string(trial) + ": approx above (1+eps)exact");
    }
    return tally;
}

Tally tight_family_criterion() {
    Tally tally;
    for (int n = 3; n <= 6; ++n) {
        Instance inst = gen_tight_greedy_family(n);
        Resolved res = resolve(inst);
        Schedule sched = highest_throughput_first(inst, nullptr, res.demand);
        tally.expect(validate_schedule(inst, sched).empty(),
                     "family n=" + std::to_string(n) + ": schedule invalid");
        tally.expect(cost(sched) == n, "family n=" + std::to_string(n) + ": greedy cost " +
                                           std::to_string(cost(sched)) + " != n");
        OracleResult oracle = exact_min_machines(inst);
        tally.expect(oracle.ok() && oracle.machines == 2,
                     "family n=" + std::to_string(n) + ": optimum is not 2");
    }
    return tally;
}

Tally determinism_criterion() {
    Tally tally;
    std::string bin = CMS_BIN_PATH;
    std::string base = "/tmp/cms_acceptance_bench";
    for (int run = 1; run <= 2; ++run) {
        std::string cmd = bin + " bench --suite small --trials 50 --seed 7 -o " + base +
                          std::to_string(run) + ".csv > /dev/null 2>&1";
        int rc = std::system(cmd.c_str());
        tally.expect(rc == 0, "bench run " + std::to_string(run) + " exited " + std::to_string(rc));
    }
    try {
        std::string a = read_file(base + "1.csv");
        std::string b = read_file(base + "2.csv");
        tally.expect(!a.empty() && a == b, "csv files differ between runs");
    } catch (const CmsError& e) {
        tally.expect(false, std::string("csv missing: ") + e.what());
    }
    return tally;
}

}  // namespace

int main() {
    std::printf("acceptance suite: %d combinatorial + %d numerical seeded instances\n",
                combinatorial_trials, numerical_trials);

    double t0 = now_ms();
    CorpusResults corpus = run_corpus();
    double corpus_ms = now_ms() - t0;

    std::ostringstream skips;
    skips << "(ptas guard skips: " << corpus.ptas_guard_skips << ")";
    report(1, "universal feasibility", corpus.feasibility, corpus_ms, skips.str());
    report(2, "lp lower bound", corpus.lp_bound, corpus_ms);

    double t3 = now_ms();
    Tally half = half_throughput();
    report(3, "half throughput", half, now_ms() - t3);

    report(4, "pseudo-forest+sparsity", corpus.pseudo, corpus_ms);
    report(5, "fixed-config bounds", corpus.fixed_bound, corpus_ms);

    double t6 = now_ms();
    Tally ptas = ptas_criterion();
    report(6, "ptas bound", ptas, now_ms() - t6);

    double t7 = now_ms();
    Tally knap = knapsack_criterion();
    knap.merge(corpus.numeric_bound);
    report(7, "numerical bounds", knap, now_ms() - t7 + corpus_ms);

    double t8 = now_ms();
    Tally tight = tight_family_criterion();
    report(8, "tight family n/2 gap", tight, now_ms() - t8);

    double t9 = now_ms();
    Tally det = determinism_criterion();
    report(9, "bench determinism", det, now_ms() - t9);

    if (criteria_failed == 0) {
        std::printf("ALL 9 CRITERIA PASS\n");
        return 0;
    }
    std::printf("%d CRITERIA FAILED\n", criteria_failed);
    return 1;
}
