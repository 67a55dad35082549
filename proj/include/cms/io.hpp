#pragma once

#include "cms/model.hpp"

#include <string>
#include <utility>
#include <vector>

namespace cms {

struct ParsedInstance {
    Instance instance;
    // Normalization notes, e.g. table entries clamped down to the job demand.
    std::vector<std::string> warnings;
};

ParsedInstance parse_instance(const std::string& json_text);
std::string dump_instance(const Instance& inst);

Schedule parse_schedule(const std::string& json_text, const Instance& inst);
std::string dump_schedule(const Schedule& sched, const Instance& inst);

ParsedInstance load_instance_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace cms
