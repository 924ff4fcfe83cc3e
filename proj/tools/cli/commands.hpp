#pragma once

#include "qlab/serialize.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace qlab::cli {

enum ExitCode : int {
  exit_ok = 0,
  exit_config = 1,
  exit_violation = 2,
  exit_budget = 3,
};

// What a command hands back: the JSON result, a CSV table for --format csv,
// and whether it found a property violation.
struct CommandOutput {
  Json result = Json::object();
  std::vector<std::string> csv_header;
  std::vector<std::vector<std::string>> csv_rows;
  bool violation = false;
};

// Every command reads a fully resolved config (see resolve_config).
CommandOutput cmd_norm(const Json& config);
CommandOutput cmd_quantize(const Json& config);
CommandOutput cmd_oracle(const Json& config);
CommandOutput cmd_sweep_eps(const Json& config);
CommandOutput cmd_haar(const Json& config);
CommandOutput cmd_covering(const Json& config);
CommandOutput cmd_construct(const Json& config);

std::vector<std::string> command_names();

// Defaults for `command` overlaid with `user`; unknown commands and keys are
// config errors (ParseError).
Json resolve_config(const std::string& command, const Json& user);

// Full report document: command, version, resolved config, result, timing.
Json make_report(const std::string& command, const Json& config, const CommandOutput& out, double seconds);

std::string to_csv(const CommandOutput& out);

// Entry point used by the executable and the tests. Writes the report to
// `out` (or the configured file) and diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace qlab::cli
