#pragma once

#include <filesystem>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace nselab {

enum ExitCode { exit_ok = 0, exit_config = 2, exit_numeric = 3, exit_margin = 4 };

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The default configuration doubles as the schema: a key is valid iff it
// exists here, and its value must have the same JSON type.
nlohmann::json default_config();

// defaults <- file <- overrides ("a.b=value", value parsed as JSON, else a string).
nlohmann::json resolve_config(const nlohmann::json& file, const std::vector<std::string>& overrides);

// Runs one command with a resolved config, writing into out. Returns an ExitCode.
int run_command(const std::string& command, const nlohmann::json& cfg, const std::filesystem::path& out,
                std::ostream& log);

// nse-lab <constants|simulate|ray|verify-strip|steady|sigma-fit> --config FILE [--out DIR]
//         [--seed N] [--override key=value ...]
int run_cli(int argc, char** argv);

}  // namespace nselab
