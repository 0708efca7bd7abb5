#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hlvu {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitContentError = 1,  // unparsable graph, bad XML, insufficient structure
  kExitUsageError = 2,    // bad flags, unreadable or unwritable files
};

/// Runs one subcommand (validate-graph, gen-queries, answer, score, stats).
/// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace hlvu
