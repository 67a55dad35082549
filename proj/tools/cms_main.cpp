#include "cms/bench.hpp"
#include "cms/errors.hpp"
#include "cms/fixed_configs.hpp"
#include "cms/greedy.hpp"
#include "cms/io.hpp"
#include "cms/numerical.hpp"
#include "cms/oracle.hpp"
#include "cms/ptas.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

namespace {

// 0 ok, 2 infeasible, 3 guard exceeded, 4 bound violation, 5 io/parse,
// 6 instance-kind mismatch
int exit_code(const cms::CmsError& e) {
    switch (e.kind()) {
        case cms::ErrorKind::infeasible: return 2;
        case cms::ErrorKind::guard_exceeded: return 3;
        case cms::ErrorKind::io: return 5;
        case cms::ErrorKind::invalid: return 5;
        case cms::ErrorKind::kind_mismatch: return 6;
        case cms::ErrorKind::internal: return 1;
    }
    return 1;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

struct GenArgs {
    std::string kind = "random";
    cms::GenParams params;
    std::string out = "-";
};

struct SolveArgs {
    std::string alg;
    std::string eps = "0.5";
    std::string in;
    std::string out;
    int max_configs = 6;
    long long pattern_cap = 1'000'000;
    bool with_opt = false;
    bool dump_lp = false;
    bool serial = false;
};

struct BenchArgs {
    cms::BenchConfig config;
    std::string csv_out;
};

void emit(const std::string& path, const std::string& content) {
    if (path == "-" || path.empty())
        std::cout << content << "\n";
    else
        cms::write_file(path, content);
}

int cmd_gen(const GenArgs& args) {
    cms::Instance inst;
    if (args.kind == "random")
        inst = cms::gen_random(args.params);
    else if (args.kind == "numerical-random")
        inst = cms::gen_random_numerical(args.params);
    else if (args.kind == "tight-greedy")
        inst = cms::gen_tight_greedy_family(static_cast<int>(args.params.n));
    else
        cms::fail(cms::ErrorKind::invalid, "unknown kind '" + args.kind + "'");
    emit(args.out, cms::dump_instance(inst));
    return 0;
}

int cmd_solve(const SolveArgs& args) {
    cms::ParsedInstance parsed = cms::load_instance_file(args.in);
    for (const auto& w : parsed.warnings) std::cerr << "warning: " << w << "\n";
    const cms::Instance& inst = parsed.instance;
    cms::Rat eps = cms::rat_from_string(args.eps);

    if (args.dump_lp && inst.kind == cms::InstanceKind::combinatorial)
        std::cerr << cms::dump_lp(cms::build_cms_lp(inst).lp);

    cms::Schedule sched;
    std::string extra;
    if (args.alg == "greedy-log") {
        sched = cms::solve_greedy_log(inst);
    } else if (args.alg == "fixed") {
        cms::FixedConfigOptions opts;
        opts.eps = eps;
        opts.max_configs = args.max_configs;
        opts.parallel = !args.serial;
        sched = cms::solve_fixed_configs(inst, opts);
    } else if (args.alg == "ptas") {
        cms::PtasOptions opts;
        opts.pattern_cap = args.pattern_cap;
        sched = cms::solve_ptas(inst, eps, opts);
    } else if (args.alg == "numerical") {
        cms::NumericalResult result = cms::solve_numerical(inst, eps, !args.serial);
        sched = result.schedule;
        extra = " lb=" + format_double(cms::to_double(result.lower_bound));
    } else if (args.alg == "exact") {
        cms::ExactSchedule es = cms::exact_schedule(inst);
        if (es.result.status == cms::OracleStatus::infeasible)
            cms::fail(cms::ErrorKind::infeasible, "no schedule satisfies the demands");
        if (es.result.status == cms::OracleStatus::exceeds_budget)
            cms::fail(cms::ErrorKind::guard_exceeded, "search exceeded the node budget");
        sched = es.schedule;
    } else if (args.alg == "dp") {
        long long machines = cms::dp_min_machines(inst);
        cms::ExactSchedule es = cms::exact_schedule(inst);
        if (!es.result.ok() || es.result.machines != machines)
            cms::fail(cms::ErrorKind::internal, "dp count does not match the exact search");
        sched = es.schedule;
    } else {
        cms::fail(cms::ErrorKind::invalid, "unknown algorithm '" + args.alg + "'");
    }

    bool feasible = cms::validate_schedule(inst, sched).empty();
    std::string line = "cost=" + std::to_string(cms::cost(sched)) +
                       " feasible=" + (feasible ? "true" : "false") + extra;
    if (args.with_opt) {
        cms::OracleResult oracle = cms::exact_min_machines(inst);
        if (oracle.ok()) {
            line += " opt=" + std::to_string(oracle.machines);
            double ratio = oracle.machines > 0 ? static_cast<double>(cms::cost(sched)) /
                                                     static_cast<double>(oracle.machines)
                                               : (cms::cost(sched) == 0 ? 1.0 : 0.0);
            line += " ratio=" + format_double(ratio);
        }
    }
    std::cout << line << "\n";
    if (!args.out.empty()) cms::write_file(args.out, cms::dump_schedule(sched, inst));
    return 0;
}

int cmd_validate(const std::string& instance_path, const std::string& schedule_path) {
    cms::ParsedInstance parsed = cms::load_instance_file(instance_path);
    for (const auto& w : parsed.warnings) std::cerr << "warning: " << w << "\n";
    auto violations = cms::validate_instance(parsed.instance);
    if (!schedule_path.empty()) {
        cms::Schedule sched = cms::parse_schedule(cms::read_file(schedule_path), parsed.instance);
        auto more = cms::validate_schedule(parsed.instance, sched);
        violations.insert(violations.end(), more.begin(), more.end());
    }
    for (const auto& v : violations) std::cout << v << "\n";
    if (!violations.empty()) return 2;
    std::cout << "ok\n";
    return 0;
}

int cmd_oracle(const std::string& instance_path) {
    cms::ParsedInstance parsed = cms::load_instance_file(instance_path);
    cms::OracleResult result = cms::exact_min_machines(parsed.instance);
    switch (result.status) {
        case cms::OracleStatus::found:
            std::cout << "opt=" << result.machines << " nodes=" << result.nodes << "\n";
            return 0;
        case cms::OracleStatus::infeasible:
            std::cout << "infeasible\n";
            return 2;
        case cms::OracleStatus::exceeds_budget:
            std::cout << "exceeds-budget nodes=" << result.nodes << "\n";
            return 3;
    }
    return 1;
}

int cmd_bench(const BenchArgs& args) {
    auto rows = cms::run_bench(args.config);
    std::cout << cms::to_table(rows);
    std::string csv = cms::to_csv(rows);
    if (!args.csv_out.empty()) cms::write_file(args.csv_out, csv);
    auto violations = cms::check_bounds(rows);
    for (const auto& v : violations) std::cerr << "bound violation: " << v << "\n";
    return violations.empty() ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"configurable machine scheduling toolkit"};
    app.require_subcommand(1);

    GenArgs gen;
    auto* gen_cmd = app.add_subcommand("gen", "generate an instance");
    gen_cmd->add_option("--kind", gen.kind, "random | tight-greedy | numerical-random");
    gen_cmd->add_option("--n", gen.params.n, "jobs (tight-greedy: family index)");
    gen_cmd->add_option("--blocks", gen.params.blocks, "block types");
    gen_cmd->add_option("--configs", gen.params.configs, "configurations");
    gen_cmd->add_option("--capacity", gen.params.capacity, "numerical machine size");
    gen_cmd->add_option("--max-demand", gen.params.max_demand, "demand upper bound");
    gen_cmd->add_option("--max-table", gen.params.max_table, "table value upper bound");
    gen_cmd->add_option("--seed", gen.params.seed, "rng seed");
    gen_cmd->add_option("-o,--out", gen.out, "output path (- for stdout)");

    SolveArgs solve;
    auto* solve_cmd = app.add_subcommand("solve", "run a scheduling algorithm");
    solve_cmd->add_option("--alg", solve.alg, "greedy-log | fixed | ptas | numerical | exact | dp")
        ->required();
    solve_cmd->add_option("--epsilon", solve.eps, "approximation parameter");
    solve_cmd->add_option("-i,--in", solve.in, "instance path")->required();
    solve_cmd->add_option("-o,--out", solve.out, "schedule output path");
    solve_cmd->add_option("--max-configs", solve.max_configs,
                          "configuration-count guard for the fixed search");
    solve_cmd->add_option("--pattern-cap", solve.pattern_cap, "pattern enumeration budget");
    solve_cmd->add_flag("--oracle", solve.with_opt, "also compute the exact optimum");
    solve_cmd->add_flag("--dump-lp", solve.dump_lp, "dump the covering LP to stderr");
    solve_cmd->add_flag("--serial", solve.serial, "disable the parallel search paths");

    std::string oracle_in;
    auto* oracle_cmd = app.add_subcommand("oracle", "exact minimum machine count");
    oracle_cmd->add_option("-i,--in", oracle_in, "instance path")->required();

    std::string validate_instance_path, validate_schedule_path;
    auto* validate_cmd = app.add_subcommand("validate", "check an instance and optional schedule");
    validate_cmd->add_option("-i,--in", validate_instance_path, "instance path")->required();
    validate_cmd->add_option("-s,--schedule", validate_schedule_path, "schedule path");

    BenchArgs bench;
    auto* bench_cmd = app.add_subcommand("bench", "run the benchmark harness");
    bench_cmd->add_option("--suite", bench.config.suite, "small | tight | numerical")->required();
    bench_cmd->add_option("--trials", bench.config.trials, "seeded instances to run");
    bench_cmd->add_option("--seed", bench.config.seed, "rng seed");
    bench_cmd->add_option("-o,--csv", bench.csv_out, "write the CSV here");
    bool bench_serial = false;
    bench_cmd->add_flag("--serial", bench_serial, "disable the parallel trial loop");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 5;
    }

    try {
        if (gen_cmd->parsed()) return cmd_gen(gen);
        if (solve_cmd->parsed()) return cmd_solve(solve);
        if (oracle_cmd->parsed()) return cmd_oracle(oracle_in);
        if (validate_cmd->parsed()) return cmd_validate(validate_instance_path, validate_schedule_path);
        if (bench_cmd->parsed()) {
            bench.config.parallel = !bench_serial;
            return cmd_bench(bench);
        }
    } catch (const cms::CmsError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
