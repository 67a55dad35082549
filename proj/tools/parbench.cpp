// Compares the serial reference paths against the OpenMP kernels on generated
// workloads and reports wall time plus speedup.

#include "cms/bench.hpp"
#include "cms/fixed_configs.hpp"
#include "cms/model.hpp"
#include "cms/numerical.hpp"
#include "cms/oracle.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

double wall_ms(const std::function<void()>& fn) {
    auto t0 = std::chrono::steady_clock::now();
    fn();
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void report(const std::string& name, double serial_ms, double parallel_ms) {
    std::printf("%-28s serial %9.1f ms   openmp %9.1f ms   speedup %5.2fx\n", name.c_str(),
                serial_ms, parallel_ms, parallel_ms > 0 ? serial_ms / parallel_ms : 0.0);
}

}  // namespace

int main(int argc, char** argv) {
    long long trials = argc > 1 ? std::atoll(argv[1]) : 24;
#ifdef _OPENMP
    std::printf("openmp threads: %d\n", omp_get_max_threads());
#else
    std::printf("built without openmp; both columns run serial code\n");
#endif

    // Fixed-configuration grid search over a batch of instances.
    {
        std::vector<cms::Instance> batch;
        for (long long t = 0; t < trials; ++t) {
            cms::GenParams params;
            params.n = 4;
            params.blocks = 3;
            params.configs = 3;
            params.max_demand = 14;
            params.max_table = 6;
            params.seed = 42 + static_cast<unsigned long long>(t);
            batch.push_back(cms::gen_random(params));
        }
        long long serial_cost = 0, parallel_cost = 0;
        double s = wall_ms([&] {
            for (const auto& inst : batch) {
                cms::FixedConfigOptions opts;
                opts.parallel = false;
                serial_cost += cms::cost(cms::solve_fixed_configs(inst, opts));
            }
        });
        double p = wall_ms([&] {
            for (const auto& inst : batch) {
                cms::FixedConfigOptions opts;
                opts.parallel = true;
                parallel_cost += cms::cost(cms::solve_fixed_configs(inst, opts));
            }
        });
        report("fixed-config search", s, p);
        if (serial_cost != parallel_cost) {
            std::printf("MISMATCH: serial and parallel costs differ\n");
            return 1;
        }
    }

    // Per-job knapsacks of the numerical solver.
    {
        std::vector<cms::Instance> batch;
        for (long long t = 0; t < trials; ++t) {
            cms::GenParams params;
            params.n = 48;
            params.capacity = 10;
            params.max_demand = 60'000;
            params.max_table = 500;
            params.seed = 7 + static_cast<unsigned long long>(t);
            batch.push_back(cms::gen_random_numerical(params));
        }
        long long serial_cost = 0, parallel_cost = 0;
        double s = wall_ms([&] {
            for (const auto& inst : batch)
                serial_cost += cms::cost(cms::solve_numerical(inst, cms::Rat(1, 4), false).schedule);
        });
        double p = wall_ms([&] {
            for (const auto& inst : batch)
                parallel_cost += cms::cost(cms::solve_numerical(inst, cms::Rat(1, 4), true).schedule);
        });
        report("numerical knapsacks", s, p);
        if (serial_cost != parallel_cost) {
            std::printf("MISMATCH: serial and parallel costs differ\n");
            return 1;
        }
    }

    // Bench-harness trial loop.
    {
        cms::BenchConfig config;
        config.suite = "small";
        config.trials = trials;
        config.seed = 5;
        config.parallel = false;
        std::string serial_csv, parallel_csv;
        double s = wall_ms([&] { serial_csv = cms::to_csv(cms::run_bench(config)); });
        config.parallel = true;
        double p = wall_ms([&] { parallel_csv = cms::to_csv(cms::run_bench(config)); });
        report("bench trial loop", s, p);
        if (serial_csv != parallel_csv) {
            std::printf("MISMATCH: serial and parallel bench rows differ\n");
            return 1;
        }
    }
    return 0;
}
