#pragma once

#include <filesystem>
#include <string>

#include "config.hpp"

namespace stagger::cli {

// Each command writes its artifacts under config.outputs.directory and
// returns the process exit code.
int run_factorize(const RunConfig& config, const std::string& function);
int run_solve(const RunConfig& config);
int run_field(const RunConfig& config);
int run_oracle(const RunConfig& config);
int run_checks(const RunConfig& config);

// Per-site error table between two field or segment CSV files.
int run_compare(const std::filesystem::path& first, const std::filesystem::path& second,
                const std::filesystem::path& out_dir);

}  // namespace stagger::cli
