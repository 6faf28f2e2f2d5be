#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "stagger/field.hpp"
#include "stagger/oracle.hpp"
#include "stagger/prepared.hpp"

namespace stagger::cli {

// Malformed or schema-violating configuration; maps to exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct OutputOptions {
    std::filesystem::path directory = ".";
    FieldWindow window;
    bool emit_fields = true;
    bool emit_segments = true;
    bool emit_factors = true;
    bool emit_kernel_table = false;
};

// Parsed run configuration.
struct RunConfig {
    ScatteringScenario scenario;
    double theta_deg = 0.0;
    NumericsOptions numerics;
    OracleOptions oracle;
    double residual_tolerance = 1e-8;
    OutputOptions outputs;
    nlohmann::json source;  // the document as read, echoed into manifests
};

// Throws ConfigError on unreadable files, unknown keys, wrong types or
// out-of-range values.
RunConfig load_config(const std::filesystem::path& path);
RunConfig parse_config(const nlohmann::json& doc);

// Scenario block in the configuration's own units.
nlohmann::json scenario_json(const RunConfig& config);

}  // namespace stagger::cli
