#pragma once

// Command-line driver.  `kflag <command> [TYPE RANK] ...` with commands
// expand, verify, casselman and dump; see README for the full reference.
//
// Exit codes: 0 pass, 1 invariant failure, 2 usage error, 3 resource cap.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace kflag {

enum ExitCode { kExitOk = 0, kExitInvariant = 1, kExitUsage = 2, kExitResource = 3 };

struct RunConfig {
  std::string command;
  char lie_type = 0;
  int rank = 0;
  std::string format;  // json, tsv, pretty; empty = the command's default
  bool non_equivariant = false;
  std::optional<std::string> y_value;  // rational, e.g. "-3" or "1/2"
  std::optional<std::string> q_prime;  // y = -q'
  std::string cache_dir;
  int max_rank_cap = 4;
  int verification_cap = 3;  // relations suite
  // command arguments
  std::string family;
  std::string element;
  std::string suite;

  /// Throws ConfigError / ResourceError describing the first problem.
  void validate() const;
};

/// Family vocabulary accepted by expand and dump.
const std::vector<std::string>& cli_family_names();
/// Suites accepted by verify.
const std::vector<std::string>& cli_suite_names();

/// Parses args (without the program name) and runs the command.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kflag
