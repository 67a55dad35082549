#include "cms/io.hpp"

#include "cms/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace cms {

namespace {

using Json = nlohmann::ordered_json;

Json table_to_json(const std::map<std::string, long long>& table) {
    Json obj = Json::object();
    for (const auto& [name, value] : table) obj[name] = value;
    return obj;
}

std::map<std::string, long long> table_from_json(const Json& obj, const std::string& what) {
    if (!obj.is_object()) fail(ErrorKind::io, what + " must be an object");
    std::map<std::string, long long> table;
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!it.value().is_number_integer())
            fail(ErrorKind::io, what + " entry '" + it.key() + "' must be an integer");
        table[it.key()] = it.value().get<long long>();
    }
    return table;
}

}  // namespace

ParsedInstance parse_instance(const std::string& json_text) {
    Json root;
    try {
        root = Json::parse(json_text);
    } catch (const std::exception& e) {
        fail(ErrorKind::io, std::string("instance parse error: ") + e.what());
    }

    ParsedInstance out;
    Instance& inst = out.instance;
    std::string kind = root.value("kind", "combinatorial");
    if (kind == "combinatorial") {
        inst.kind = InstanceKind::combinatorial;
        if (!root.contains("blocks") || !root["blocks"].is_array())
            fail(ErrorKind::io, "combinatorial instance needs a 'blocks' array");
        for (const auto& b : root["blocks"]) inst.blocks.push_back(b.get<std::string>());
        if (!root.contains("configurations") || !root["configurations"].is_array())
            fail(ErrorKind::io, "combinatorial instance needs a 'configurations' array");
        for (const auto& c : root["configurations"]) {
            Configuration cfg;
            cfg.counts = table_from_json(c, "configuration");
            inst.configurations.push_back(std::move(cfg));
        }
    } else if (kind == "numerical") {
        inst.kind = InstanceKind::numerical;
        if (!root.contains("capacity") || !root["capacity"].is_number_integer())
            fail(ErrorKind::io, "numerical instance needs an integer 'capacity'");
        inst.capacity = root["capacity"].get<long long>();
    } else {
        fail(ErrorKind::io, "unknown instance kind '" + kind + "'");
    }

    if (!root.contains("jobs") || !root["jobs"].is_array())
        fail(ErrorKind::io, "instance needs a 'jobs' array");
    for (const auto& j : root["jobs"]) {
        Job job;
        job.id = j.at("id").get<std::string>();
        job.demand = j.at("demand").get<long long>();
        if (j.contains("table")) job.table = table_from_json(j["table"], "job table");
        // Normalize f_j(i) <= d_j; anything larger is clamped with a warning.
        for (auto& [name, value] : job.table) {
            if (value > job.demand) {
                out.warnings.push_back("job '" + job.id + "': table value for '" + name +
                                       "' clamped from " + std::to_string(value) + " to " +
                                       std::to_string(job.demand));
                value = job.demand;
            }
        }
        inst.jobs.push_back(std::move(job));
    }
    return out;
}

std::string dump_instance(const Instance& inst) {
    Json root;
    root["kind"] = inst.kind == InstanceKind::combinatorial ? "combinatorial" : "numerical";
    if (inst.kind == InstanceKind::combinatorial) {
        root["blocks"] = inst.blocks;
        Json configs = Json::array();
        for (const auto& cfg : inst.configurations) configs.push_back(table_to_json(cfg.counts));
        root["configurations"] = std::move(configs);
    } else {
        root["capacity"] = inst.capacity;
    }
    Json jobs = Json::array();
    for (const auto& job : inst.jobs) {
        Json j;
        j["id"] = job.id;
        j["demand"] = job.demand;
        j["table"] = table_to_json(job.table);
        jobs.push_back(std::move(j));
    }
    root["jobs"] = std::move(jobs);
    return root.dump();
}

Schedule parse_schedule(const std::string& json_text, const Instance& inst) {
    Json root;
    try {
        root = Json::parse(json_text);
    } catch (const std::exception& e) {
        fail(ErrorKind::io, std::string("schedule parse error: ") + e.what());
    }

    Schedule sched;
    if (!root.contains("machines") || !root["machines"].is_array())
        fail(ErrorKind::io, "schedule needs a 'machines' array");
    for (const auto& m : root["machines"]) {
        MachineUse use;
        use.multiplicity = m.value("multiplicity", 1LL);
        const auto& cfg = m.at("configuration");
        if (inst.kind == InstanceKind::combinatorial) {
            if (!cfg.is_number_integer())
                fail(ErrorKind::io, "combinatorial schedule configuration must be an index");
            use.config_index = cfg.get<int>();
        } else {
            if (!cfg.is_array())
                fail(ErrorKind::io, "numerical schedule configuration must be a size array");
            for (const auto& s : cfg) use.sizes.push_back(s.get<long long>());
        }
        if (m.contains("assignment")) {
            for (const auto& pair : m["assignment"]) {
                if (!pair.is_array() || pair.size() != 2)
                    fail(ErrorKind::io, "assignment entries must be [block, job] pairs");
                Slot slot;
                slot.block = pair[0].get<std::string>();
                if (!pair[1].is_null()) slot.job = pair[1].get<std::string>();
                use.assignment.push_back(std::move(slot));
            }
        }
        sched.machines.push_back(std::move(use));
    }
    return sched;
}

std::string dump_schedule(const Schedule& sched, const Instance& inst) {
    Json machines = Json::array();
    for (const auto& use : sched.machines) {
        Json m;
        m["multiplicity"] = use.multiplicity;
        if (inst.kind == InstanceKind::combinatorial)
            m["configuration"] = use.config_index;
        else
            m["configuration"] = use.sizes;
        Json assignment = Json::array();
        for (const auto& slot : use.assignment) {
            Json pair = Json::array();
            pair.push_back(slot.block);
            if (slot.idle())
                pair.push_back(nullptr);
            else
                pair.push_back(slot.job);
            assignment.push_back(std::move(pair));
        }
        m["assignment"] = std::move(assignment);
        machines.push_back(std::move(m));
    }
    Json root;
    root["machines"] = std::move(machines);
    return root.dump();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::io, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorKind::io, "cannot write '" + path + "'");
    out << content;
}

ParsedInstance load_instance_file(const std::string& path) { return parse_instance(read_file(path)); }

}  // namespace cms
