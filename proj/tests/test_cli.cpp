#include "cms/bench.hpp"
#include "cms/io.hpp"

#include "helpers.hpp"

#include <doctest.h>

#include <cstdio>
#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <string>

using namespace cms;
using namespace cms::test;

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& args, bool raw_command = false) {
    std::string cmd =
        (raw_command ? args : std::string(CMS_BIN_PATH) + " " + args) + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    while (size_t n = fread(buf, 1, sizeof(buf), pipe)) out.append(buf, n);
    int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

std::string tmp_path(const std::string& name) { return "/tmp/cms_cli_test_" + name; }

}  // namespace

TEST_CASE("gen is deterministic and solve reports a summary line") {
    auto first = run("gen --kind random --seed 1 --n 3 -o " + tmp_path("a.json"));
    auto second = run("gen --kind random --seed 1 --n 3 -o " + tmp_path("b.json"));
    CHECK(first.exit_code == 0);
    CHECK(read_file(tmp_path("a.json")) == read_file(tmp_path("b.json")));

    auto tight = run("gen --kind tight-greedy --n 3 -o " + tmp_path("tight.json"));
    CHECK(tight.exit_code == 0);
    ParsedInstance parsed = load_instance_file(tmp_path("tight.json"));
    CHECK(parsed.instance.blocks.size() == 4);

    auto solved = run("solve --alg exact -i " + tmp_path("tight.json") + " --oracle -o " +
                      tmp_path("tight_sched.json"));
    CHECK(solved.exit_code == 0);
    CHECK(solved.out.find("cost=2 feasible=true opt=2 ratio=1") != std::string::npos);

    auto validated =
        run("validate -i " + tmp_path("tight.json") + " -s " + tmp_path("tight_sched.json"));
    CHECK(validated.exit_code == 0);
    CHECK(validated.out.find("ok") != std::string::npos);
}

TEST_CASE("distinct exit codes per failure class") {
    write_file(tmp_path("zero.json"),
               dump_instance(combinatorial({"b1"}, {config({{"b1", 1}})}, {job("j1", 3, {})})));
    CHECK(run("solve --alg exact -i " + tmp_path("zero.json")).exit_code == 2);  // infeasible

    write_file(tmp_path("numerical.json"), dump_instance(numerical(4, {job("j1", 2, {{"2", 2}})})));
    CHECK(run("solve --alg fixed -i " + tmp_path("numerical.json")).exit_code == 6);  // kind
    CHECK(run("solve --alg numerical -i " + tmp_path("numerical.json")).exit_code == 0);

    write_file(tmp_path("broken.json"), "{not json");
    CHECK(run("solve --alg exact -i " + tmp_path("broken.json")).exit_code == 5);  // parse

    Instance wide = t1();
    for (int c = 0; c < 7; ++c) wide.configurations.push_back(config({{"b1", 1}}));
    write_file(tmp_path("wide.json"), dump_instance(wide));
    CHECK(run("solve --alg fixed -i " + tmp_path("wide.json")).exit_code == 3);  // guard
}

TEST_CASE("oracle subcommand and the node-budget override") {
    write_file(tmp_path("t1.json"), dump_instance(t1()));
    auto ok = run("oracle -i " + tmp_path("t1.json"));
    CHECK(ok.exit_code == 0);
    CHECK(ok.out.find("opt=1") != std::string::npos);

    write_file(tmp_path("zero2.json"),
               dump_instance(combinatorial({"b1"}, {config({{"b1", 1}})}, {job("j1", 3, {})})));
    CHECK(run("oracle -i " + tmp_path("zero2.json")).exit_code == 2);

    auto starved = run("env CMS_NODE_BUDGET=3 " + std::string(CMS_BIN_PATH) + " oracle -i " +
                           tmp_path("t1.json"),
                       true);
    CHECK(starved.exit_code == 3);
    CHECK(starved.out.find("exceeds-budget") != std::string::npos);
}

TEST_CASE("solve covers the remaining algorithms end to end") {
    auto gen = run("gen --kind random --seed 4 --n 3 --blocks 2 --configs 2 -o " +
                   tmp_path("small.json"));
    CHECK(gen.exit_code == 0);
    for (const std::string alg : {"greedy-log", "fixed", "ptas", "dp"}) {
        auto solved = run("solve --alg " + alg + " --epsilon 1 -i " + tmp_path("small.json") +
                          " --oracle");
        CHECK(solved.exit_code == 0);
        CHECK(solved.out.find("feasible=true") != std::string::npos);
    }

    auto none = run("gen --kind random --n 0 -o " + tmp_path("none.json"));
    CHECK(none.exit_code == 0);
    auto solved = run("solve --alg exact -i " + tmp_path("none.json"));
    CHECK(solved.exit_code == 0);
    CHECK(solved.out.find("cost=0 feasible=true") != std::string::npos);
}

TEST_CASE("bench writes a table and a deterministic csv") {
    auto one = run("bench --suite small --trials 3 --seed 7 -o " + tmp_path("bench1.csv"));
    CHECK(one.exit_code == 0);
    CHECK(one.out.find("instance") != std::string::npos);
    auto two = run("bench --suite small --trials 3 --seed 7 -o " + tmp_path("bench2.csv"));
    CHECK(read_file(tmp_path("bench1.csv")) == read_file(tmp_path("bench2.csv")));

    auto empty = run("bench --suite small --trials 0 -o " + tmp_path("bench0.csv"));
    CHECK(empty.exit_code == 0);

    auto numeric = run("bench --suite numerical --trials 4 -o " + tmp_path("benchn.csv"));
    CHECK(numeric.exit_code == 0);
    auto tight = run("bench --suite tight --trials 1 -o " + tmp_path("bencht.csv"));
    CHECK(tight.exit_code == 0);
    CHECK(tight.out.find("tight-6") != std::string::npos);
}

TEST_CASE("csv and table report the same rows") {
    BenchConfig config;
    config.suite = "small";
    config.trials = 4;
    config.seed = 2;
    auto rows = run_bench(config);
    auto lines = [](const std::string& text) {
        return std::count(text.begin(), text.end(), '\n');
    };
    CHECK(lines(to_csv(rows)) == static_cast<long long>(rows.size()) + 1);
    CHECK(lines(to_table(rows)) == static_cast<long long>(rows.size()) + 1);
}

TEST_CASE("an injected bound violation turns into a nonzero verdict") {
    BenchRow fake;
    fake.instance_id = "x";
    fake.algorithm = "exact";
    fake.cost = 3;
    fake.feasible = true;
    fake.has_opt = true;
    fake.opt = 2;
    CHECK_FALSE(check_bounds({fake}).empty());

    BenchRow infeasible = fake;
    infeasible.algorithm = "greedy-log";
    infeasible.feasible = false;
    CHECK_FALSE(check_bounds({infeasible}).empty());

    BenchRow skipped = infeasible;
    skipped.skipped = true;
    CHECK(check_bounds({skipped}).empty());
}
