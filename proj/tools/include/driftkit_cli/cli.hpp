#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace driftkit::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,      // bad flags, parse errors, malformed input
  kExitRejected = 2,   // precondition, domain, capacity, convergence, estimation
  kExitViolation = 3,  // a verify suite found a violation
};

// Entry point behind the `driftkit` executable; `args` excludes argv[0].
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace driftkit::cli
