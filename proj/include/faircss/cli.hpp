#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace faircss::cli {

/// Exit codes, one per error class.
enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kIo = 2,
  kPrecondition = 3,
  kInfeasible = 4,
  kBudget = 5,
  kNumerical = 6,
  kInternal = 7,
};

/// Runs the command line `args` (program name excluded). Results go to
/// `out` unless a subcommand is given --out; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace faircss::cli
