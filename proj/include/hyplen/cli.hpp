#pragma once

#include <cstdint>
#include <ostream>
#include <string>

#include <json.hpp>

#include "hyplen/curves.hpp"
#include "hyplen/deform.hpp"
#include "hyplen/groups.hpp"
#include "hyplen/spectrum.hpp"

namespace hyplen::cli {

enum class ExitCode : int {
    ok = 0,
    failure = 1,
    config_error = 2,
    precondition_error = 3,
    certification_failure = 4,
    non_convergence = 5,
};

/// Config rejection with a field-path diagnostic ("surface.inner: ...").
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CliOptions {
    std::string out_dir = ".";
    std::string format = "json";  // spectrum persistence: json or csv
    std::uint64_t seed = 0;
};

ModelSurface parse_surface(const nlohmann::json& j, const std::string& path);
SchottkyRepresentation parse_group(const nlohmann::json& j, const std::string& path);

/// Runs one subcommand (length, shorten, spectrum, deform, certify, compare)
/// against a parsed config document. Writes result files under
/// options.out_dir and a human summary to out.
ExitCode run_command(const std::string& command, const nlohmann::json& config,
                     const CliOptions& options, std::ostream& out, std::ostream& err);

/// Entry point used by the binary: loads the config file and dispatches.
int run_cli(const std::string& command, const std::string& config_path,
            const CliOptions& options, std::ostream& out, std::ostream& err);

}  // namespace hyplen::cli
