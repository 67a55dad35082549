#include "cms/model.hpp"

#include "cms/errors.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace cms {

long long Configuration::size() const {
    long long total = 0;
    for (const auto& [name, count] : counts) total += count;
    return total;
}

std::vector<std::string> Instance::block_names() const {
    if (kind == InstanceKind::combinatorial) return blocks;
    std::vector<std::string> names;
    names.reserve(static_cast<size_t>(capacity));
    for (long long s = 1; s <= capacity; ++s) names.push_back(std::to_string(s));
    return names;
}

long long cost(const Schedule& sched) {
    long long total = 0;
    for (const auto& m : sched.machines) total += m.multiplicity;
    return total;
}

std::vector<std::string> validate_instance(const Instance& inst) {
    std::vector<std::string> violations;
    std::set<std::string> declared;

    if (inst.kind == InstanceKind::combinatorial) {
        for (const auto& b : inst.blocks) {
            if (!declared.insert(b).second)
                violations.push_back("duplicate block type '" + b + "'");
        }
        for (size_t c = 0; c < inst.configurations.size(); ++c) {
            const auto& cfg = inst.configurations[c];
            long long total = 0;
            for (const auto& [name, count] : cfg.counts) {
                if (!declared.count(name))
                    violations.push_back("configuration " + std::to_string(c) +
                                         ": unknown block type '" + name + "'");
                if (count < 0)
                    violations.push_back("configuration " + std::to_string(c) +
                                         ": negative count for '" + name + "'");
                total += count;
            }
            if (total < 1)
                violations.push_back("configuration " + std::to_string(c) + ": empty (size 0)");
        }
    } else {
        if (inst.capacity < 1) violations.push_back("numerical capacity must be positive");
        if (!inst.blocks.empty() || !inst.configurations.empty())
            violations.push_back("numerical instance must not declare blocks or configurations");
        for (long long s = 1; s <= inst.capacity; ++s) declared.insert(std::to_string(s));
    }

    std::set<std::string> job_ids;
    for (const auto& job : inst.jobs) {
        if (!job_ids.insert(job.id).second)
            violations.push_back("duplicate job id '" + job.id + "'");
        if (job.demand < 0) violations.push_back("job '" + job.id + "': negative demand");
        for (const auto& [name, value] : job.table) {
            if (!declared.count(name))
                violations.push_back("job '" + job.id + "': unknown block type '" + name + "'");
            if (value < 0)
                violations.push_back("job '" + job.id + "': negative table entry for '" + name + "'");
            else if (value > job.demand)
                violations.push_back("job '" + job.id + "': table exceeds demand (f('" + name +
                                     "')=" + std::to_string(value) + " > d=" +
                                     std::to_string(job.demand) + ")");
        }
    }
    return violations;
}

namespace {

long long table_value(const Job& job, const std::string& block) {
    auto it = job.table.find(block);
    return it == job.table.end() ? 0 : it->second;
}

}  // namespace

std::vector<std::string> validate_schedule(const Instance& inst, const Schedule& sched) {
    std::vector<std::string> violations;

    std::map<std::string, const Job*> jobs;
    for (const auto& job : inst.jobs) jobs[job.id] = &job;
    std::map<std::string, long long> covered;

    for (size_t mi = 0; mi < sched.machines.size(); ++mi) {
        const auto& use = sched.machines[mi];
        const std::string where = "machine " + std::to_string(mi);
        if (use.multiplicity < 1) {
            violations.push_back(where + ": multiplicity must be positive");
            continue;
        }

        // Slot counts must match the configuration, and the configuration must
        // be admissible for the instance.
        std::map<std::string, long long> expected;
        if (inst.kind == InstanceKind::combinatorial) {
            if (use.config_index < 0 ||
                use.config_index >= static_cast<int>(inst.configurations.size())) {
                violations.push_back(where + ": configuration index out of range");
                continue;
            }
            expected = inst.configurations[static_cast<size_t>(use.config_index)].counts;
        } else {
            long long total = 0;
            for (long long s : use.sizes) {
                if (s < 1 || s > inst.capacity) {
                    violations.push_back(where + ": block size " + std::to_string(s) +
                                         " outside 1.." + std::to_string(inst.capacity));
                }
                expected[std::to_string(s)] += 1;
                total += s;
            }
            if (total > inst.capacity)
                violations.push_back(where + ": capacity exceeded (" + std::to_string(total) +
                                     " > " + std::to_string(inst.capacity) + ")");
        }

        std::map<std::string, long long> seen;
        for (const auto& slot : use.assignment) {
            seen[slot.block] += 1;
            if (slot.idle()) continue;
            auto it = jobs.find(slot.job);
            if (it == jobs.end()) {
                violations.push_back(where + ": unknown job '" + slot.job + "'");
                continue;
            }
            covered[slot.job] += use.multiplicity * table_value(*it->second, slot.block);
        }
        for (const auto& [name, count] : expected) {
            if (count != 0 && seen[name] != count)
                violations.push_back(where + ": block '" + name + "' has " +
                                     std::to_string(seen[name]) + " slots, configuration has " +
                                     std::to_string(count));
        }
        for (const auto& [name, count] : seen) {
            if (!expected.count(name) || expected[name] == 0)
                violations.push_back(where + ": block '" + name + "' not in configuration");
        }
    }

    for (const auto& job : inst.jobs) {
        long long got = covered.count(job.id) ? covered[job.id] : 0;
        if (got < job.demand)
            violations.push_back("job " + job.id + " unsatisfied (" + std::to_string(got) + "/" +
                                 std::to_string(job.demand) + ")");
    }
    return violations;
}

long long satisfied_demand(const Instance& inst, const Schedule& sched, const std::string& job_id) {
    const Job* job = nullptr;
    for (const auto& j : inst.jobs)
        if (j.id == job_id) job = &j;
    if (!job) fail(ErrorKind::invalid, "unknown job id '" + job_id + "'");

    long long total = 0;
    for (const auto& use : sched.machines)
        for (const auto& slot : use.assignment)
            if (slot.job == job_id) total += use.multiplicity * table_value(*job, slot.block);
    return total;
}

long long Resolved::config_size(int c) const {
    long long total = 0;
    for (long long count : config_counts[static_cast<size_t>(c)]) total += count;
    return total;
}

Resolved resolve(const Instance& inst) {
    auto violations = validate_instance(inst);
    if (!violations.empty()) fail(ErrorKind::invalid, "invalid instance: " + violations.front());

    Resolved res;
    res.kind = inst.kind;
    res.capacity = inst.capacity;
    res.block_names = inst.block_names();
    res.num_blocks = static_cast<int>(res.block_names.size());
    res.num_jobs = static_cast<int>(inst.jobs.size());

    std::map<std::string, int> index;
    for (int i = 0; i < res.num_blocks; ++i) index[res.block_names[static_cast<size_t>(i)]] = i;

    if (inst.kind == InstanceKind::combinatorial) {
        for (const auto& cfg : inst.configurations) {
            std::vector<long long> counts(static_cast<size_t>(res.num_blocks), 0);
            for (const auto& [name, count] : cfg.counts)
                counts[static_cast<size_t>(index.at(name))] = count;
            res.config_counts.push_back(std::move(counts));
        }
    }

    for (const auto& job : inst.jobs) {
        res.job_ids.push_back(job.id);
        res.demand.push_back(job.demand);
        std::vector<long long> row(static_cast<size_t>(res.num_blocks), 0);
        for (const auto& [name, value] : job.table)
            row[static_cast<size_t>(index.at(name))] = std::min(value, job.demand);
        res.f.push_back(std::move(row));
    }
    return res;
}

MachineUse make_machine(const Resolved& res, int config_index, const std::vector<int>& slot_jobs,
                        long long multiplicity) {
    return make_machine_from_counts(res, config_index,
                                    res.config_counts[static_cast<size_t>(config_index)], slot_jobs,
                                    multiplicity);
}

MachineUse make_machine_from_counts(const Resolved& res, int config_index,
                                    const std::vector<long long>& counts,
                                    const std::vector<int>& slot_jobs, long long multiplicity) {
    MachineUse use;
    use.multiplicity = multiplicity;
    size_t slot = 0;
    if (res.kind == InstanceKind::combinatorial) use.config_index = config_index;
    for (int i = 0; i < res.num_blocks; ++i) {
        for (long long c = 0; c < counts[static_cast<size_t>(i)]; ++c, ++slot) {
            int j = slot < slot_jobs.size() ? slot_jobs[slot] : -1;
            use.assignment.push_back({res.block_names[static_cast<size_t>(i)],
                                      j < 0 ? std::string() : res.job_ids[static_cast<size_t>(j)]});
        }
        if (res.kind == InstanceKind::numerical)
            for (long long c = 0; c < counts[static_cast<size_t>(i)]; ++c)
                use.sizes.push_back(i + 1);
    }
    return use;
}

Schedule merge_machines(const Schedule& sched) {
    Schedule out;
    for (const auto& use : sched.machines) {
        bool merged = false;
        for (auto& prev : out.machines) {
            if (prev.config_index == use.config_index && prev.sizes == use.sizes &&
                prev.assignment == use.assignment) {
                prev.multiplicity += use.multiplicity;
                merged = true;
                break;
            }
        }
        if (!merged) out.machines.push_back(use);
    }
    return out;
}

}  // namespace cms
