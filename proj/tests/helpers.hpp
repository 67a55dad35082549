#pragma once

#include "cms/model.hpp"
#include "cms/oracle.hpp"

#include <map>
#include <string>
#include <vector>

namespace cms::test {

inline Configuration config(std::map<std::string, long long> counts) {
    Configuration c;
    c.counts = std::move(counts);
    return c;
}

inline Job job(std::string id, long long demand, std::map<std::string, long long> table) {
    Job j;
    j.id = std::move(id);
    j.demand = demand;
    j.table = std::move(table);
    return j;
}

// One job, one single-block configuration, demand met by one block.
inline Instance t1() {
    Instance inst;
    inst.blocks = {"b1"};
    inst.configurations = {config({{"b1", 1}})};
    inst.jobs = {job("j1", 5, {{"b1", 5}})};
    return inst;
}

inline Instance combinatorial(std::vector<std::string> blocks, std::vector<Configuration> configs,
                              std::vector<Job> jobs) {
    Instance inst;
    inst.blocks = std::move(blocks);
    inst.configurations = std::move(configs);
    inst.jobs = std::move(jobs);
    return inst;
}

inline Instance numerical(long long capacity, std::vector<Job> jobs) {
    Instance inst;
    inst.kind = InstanceKind::numerical;
    inst.capacity = capacity;
    inst.jobs = std::move(jobs);
    return inst;
}

// Small random instances for property tests, always oracle-friendly.
inline Instance fuzz_instance(unsigned long long seed) {
    GenParams params;
    params.n = 1 + (seed % 5);
    params.blocks = 1 + (seed % 3);
    params.configs = 1 + ((seed / 3) % 3);
    params.max_demand = 10;
    params.max_table = 5;
    params.seed = seed;
    return gen_random(params);
}

inline Instance fuzz_numerical(unsigned long long seed) {
    GenParams params;
    params.n = 1 + (seed % 5);
    params.capacity = 2 + (seed % 4);
    params.max_demand = 12;
    params.max_table = 6;
    params.seed = seed;
    return gen_random_numerical(params);
}

}  // namespace cms::test
