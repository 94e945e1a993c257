#pragma once

#include <stdexcept>
#include <string>

#include "airs/model.hpp"

namespace airs {

// Input/output failures that are not validation diagnostics: unreadable
// files, malformed syntax, missing columns and the like.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class InstanceFormat { Auto, Json, Tables };

// `path` is a .json file or a table directory containing manifest.json.
// Auto keys off that distinction.
ProblemInstance read_instance(const std::string& path, InstanceFormat fmt = InstanceFormat::Auto);
void write_instance(const ProblemInstance& pi, const std::string& path,
                    InstanceFormat fmt = InstanceFormat::Auto);

// Implementation entry points, exposed for targeted tests.
ProblemInstance read_instance_json(const std::string& path);
void write_instance_json(const ProblemInstance& pi, const std::string& path);
ProblemInstance read_instance_tables(const std::string& dir);
void write_instance_tables(const ProblemInstance& pi, const std::string& dir);

} // namespace airs
