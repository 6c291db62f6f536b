#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace pairgraph {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailed = 1,  // oracle discrepancy above tolerance
  kExitValidation = 2,
  kExitDegenerate = 3,
};

/// Runs the command line `args` (program name excluded): test, simulate or oracle.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pairgraph
