// stagger: command-line driver for the staggered-defect lattice solver.

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include <cstdio>
#include <optional>
#include <string>

#include "commands.hpp"
#include "config.hpp"
#include "stagger/errors.hpp"

namespace {

int report(const std::string& kind, const std::string& message, int code) {
    const nlohmann::json err = {{"error", kind}, {"message", message}, {"exit_code", code}};
    std::fprintf(stderr, "%s\n", err.dump().c_str());
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    using namespace stagger::cli;
    CLI::App app{"Staggered semi-infinite cracks and rigid constraints on a square lattice"};
    app.set_version_flag("--version", STAGGER_VERSION);
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::string function = "alpha";
    std::optional<int> n_override;
    std::string first, second;

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("-c,--config", config_path, "JSON run configuration")->required()->check(CLI::ExistingFile);
        sub->add_option("-o,--out", out_dir, "Output directory (overrides outputs.directory)");
    };
    CLI::App* factorize = app.add_subcommand("factorize", "Factor Lk, Lc, alpha or beta on the contour");
    add_common(factorize);
    factorize->add_option("-f,--function", function, "Function to factor")
        ->check(CLI::IsMember({"Lk", "Lc", "alpha", "beta"}));
    factorize->add_option("--N", n_override, "Row separation override");
    CLI::App* solve = app.add_subcommand("solve", "Solve the reduced system for the segment values");
    add_common(solve);
    CLI::App* field = app.add_subcommand("field", "Synthesize the scattered field on the output window");
    add_common(field);
    CLI::App* oracle = app.add_subcommand("oracle", "Brute-force finite-grid reference solution");
    add_common(oracle);
    CLI::App* checks = app.add_subcommand("checks", "Run the invariant suite");
    add_common(checks);
    CLI::App* compare = app.add_subcommand("compare", "Per-site error table between two CSV outputs");
    compare->add_option("first", first, "First CSV")->required()->check(CLI::ExistingFile);
    compare->add_option("second", second, "Second CSV")->required()->check(CLI::ExistingFile);
    compare->add_option("-o,--out", out_dir, "Output directory")->default_val(".");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        return report("UsageError", e.what(), 2);
    }

    try {
        if (compare->parsed()) return run_compare(first, second, out_dir);
        RunConfig config = load_config(config_path);
        if (!out_dir.empty()) config.outputs.directory = out_dir;
        if (factorize->parsed()) {
            if (n_override) {
                if (*n_override < 1) throw ConfigError("--N must be at least 1");
                config.scenario.n_sep = *n_override;
            }
            return run_factorize(config, function);
        }
        if (solve->parsed()) return run_solve(config);
        if (field->parsed()) return run_field(config);
        if (oracle->parsed()) return run_oracle(config);
        return run_checks(config);
    } catch (const ConfigError& e) {
        return report("ConfigError", e.what(), 2);
    } catch (const stagger::Error& e) {
        const int code = e.code() == stagger::ErrorCode::InvalidScenario ? 2 : 1;
        return report(stagger::error_name(e.code()), e.what(), code);
    } catch (const std::exception& e) {
        return report("InternalError", e.what(), 1);
    }
}
