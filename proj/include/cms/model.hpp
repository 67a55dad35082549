#pragma once

#include <map>
#include <string>
#include <vector>

namespace cms {

enum class InstanceKind { combinatorial, numerical };

// A multiset of block types a machine may be partitioned into.
// Keys are block names, values the multiplicity of that type.
struct Configuration {
    std::map<std::string, long long> counts;

    long long size() const;
    bool operator==(const Configuration&) const = default;
};

struct Job {
    std::string id;
    long long demand = 0;
    // Demand units satisfied by one block of each type; missing entries mean 0.
    std::map<std::string, long long> table;

    bool operator==(const Job&) const = default;
};

struct Instance {
    InstanceKind kind = InstanceKind::combinatorial;
    std::vector<std::string> blocks;             // combinatorial only
    std::vector<Configuration> configurations;   // combinatorial only
    long long capacity = 0;                      // numerical only: machine size k
    std::vector<Job> jobs;

    // Block names in declaration order; numerical instances expose sizes "1".."k".
    std::vector<std::string> block_names() const;
    bool operator==(const Instance&) const = default;
};

// One block slot of a configured machine. An empty job id means the slot idles.
struct Slot {
    std::string block;
    std::string job;

    bool idle() const { return job.empty(); }
    bool operator==(const Slot&) const = default;
};

// `multiplicity` identical machines sharing one configuration and assignment.
// Combinatorial machines reference the instance's configuration list by index;
// numerical machines inline their block-size multiset.
struct MachineUse {
    long long multiplicity = 1;
    int config_index = -1;
    std::vector<long long> sizes;
    std::vector<Slot> assignment;

    bool operator==(const MachineUse&) const = default;
};

struct Schedule {
    std::vector<MachineUse> machines;

    bool operator==(const Schedule&) const = default;
};

long long cost(const Schedule& sched);

// Empty result means valid; each entry names the offending entity and rule.
std::vector<std::string> validate_instance(const Instance& inst);
std::vector<std::string> validate_schedule(const Instance& inst, const Schedule& sched);

// Total units delivered to a job, counting multiplicities. No capping at the
// job's demand. Throws on an unknown job id.
long long satisfied_demand(const Instance& inst, const Schedule& sched, const std::string& job_id);

// Index-based view of a valid instance, used by the solvers.
// Block i of a numerical instance is the size i+1.
struct Resolved {
    InstanceKind kind = InstanceKind::combinatorial;
    int num_blocks = 0;
    int num_jobs = 0;
    long long capacity = 0;
    std::vector<std::string> block_names;
    std::vector<std::string> job_ids;
    std::vector<std::vector<long long>> config_counts;  // [config][block]
    std::vector<long long> demand;                      // [job]
    std::vector<std::vector<long long>> f;              // [job][block]

    long long config_size(int c) const;
};

Resolved resolve(const Instance& inst);

// Helper used by solvers to emit machines: expands a configuration's counts
// into slots (block types ascending) with the given per-slot job assignment
// (-1 = idle).
MachineUse make_machine(const Resolved& res, int config_index, const std::vector<int>& slot_jobs,
                        long long multiplicity);

// Same, for machines not drawn from the instance's configuration list
// (numerical machines, or search-internal configurations). `config_index`
// is recorded for combinatorial instances and ignored for numerical ones.
MachineUse make_machine_from_counts(const Resolved& res, int config_index,
                                    const std::vector<long long>& counts,
                                    const std::vector<int>& slot_jobs, long long multiplicity);

// Merges uses with identical configuration and assignment, preserving first
// appearance order.
Schedule merge_machines(const Schedule& sched);

}  // namespace cms
