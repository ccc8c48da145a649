#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace fminlab {

class ScenarioConfig;

inline constexpr const char* kToolVersion = "0.1.0";

struct CommandOptions {
  std::string command;
  std::optional<std::string> config;
  std::optional<std::string> preset;
  std::optional<std::string> out;
  std::optional<std::string> csv_dir;
  std::optional<int> samples;
  std::optional<double> tol;
  int jobs = 1;
};

std::vector<std::string> command_names();

// Exit status: 0 success, 1 configuration or parse error, 2 numerical
// contract failure. The report goes to the report path when one is set,
// otherwise to `out`; diagnostics go to `err`.
int run_command(const CommandOptions& options, std::ostream& out, std::ostream& err);

// Report body for one subcommand (no tool_version / digest / timing).
// Throws the library's errors unchanged; `csv_dir` may be empty.
nlohmann::json command_body(const std::string& command, const ScenarioConfig& config,
                            const CommandOptions& options, const std::string& csv_dir);

}  // namespace fminlab
