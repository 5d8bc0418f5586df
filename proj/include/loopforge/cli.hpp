#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace loopforge::cli {

enum ExitCode : int {
  kOk = 0,
  kClauseFailed = 1,
  kInputError = 2,
  kPreconditionViolated = 3,
};

struct Command {
  std::string verb;  // classify | inner | check | isotopism | enumerate | witness
  std::vector<std::string> inputs;
  // Verb-specific options, keyed by long name without dashes ("theorem",
  // "phi", "workers", ...). Repeatable options are joined with '\n'.
  std::map<std::string, std::string> options;
  std::vector<std::string> flags;  // boolean switches: "json", "up-to-iso", ...

  bool has_flag(const std::string& f) const;
  std::optional<std::string> option(const std::string& key) const;
};

struct Result {
  int exit_code = kOk;
  std::string out;
  std::string err;
};

// Parses argv (without the program name). Returns the usage error in
// Result on failure.
std::optional<Command> parse_command(const std::vector<std::string>& args, Result& error);

Result run(const Command& cmd);

// parse_command + run.
Result run(const std::vector<std::string>& args);

}  // namespace loopforge::cli
