#pragma once

// Command dispatch for the ess tool: option resolution, the per-verb
// reports (JSON and aligned text) and the regression selftest.

#include <optional>
#include <string>
#include <vector>

#include "ess/io.hpp"

namespace ess {

enum ExitCode : int { kExitOk = 0, kExitInput = 2, kExitHypothesis = 3, kExitCrossCheck = 4 };

struct CommandOptions {
  std::string verb;
  std::optional<std::string> input;    ///< path to a JSON document
  std::optional<std::string> builtin;  ///< built-in name, e.g. "lyndon:6"
  std::optional<std::string> field;
  std::optional<std::string> group_quotient;
  std::optional<std::string> nu;
  std::optional<std::uint64_t> d;
  std::optional<std::uint64_t> p;
  std::uint64_t r = 1;
  std::size_t pages = 3;   ///< --R
  std::size_t window = 4;  ///< --S
  std::optional<std::string> q_range;
  bool json = false;
  bool strict = false;
};

struct CommandOutcome {
  int exit_code = kExitOk;
  Json report;       ///< empty on error
  std::string text;  ///< rendered report
  std::string error;
};

const std::vector<std::string>& verbs();

/// Parses argv-style arguments (without the program name). Throws
/// InputError on bad usage; sets `help` and returns when --help is given.
CommandOptions parse_command_line(const std::vector<std::string>& args, std::string* help = nullptr);

/// Never throws: errors are reported through the exit code.
CommandOutcome run_command(const CommandOptions& opts);

/// Text rendering of a report produced by run_command.
std::string render_text(const Json& report);

}  // namespace ess
