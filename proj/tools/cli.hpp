#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace chromabound::cli {

// Stable exit codes.
enum ExitCode : int {
  kOk = 0,
  kCertified = 1,  // qc-level: no colouring; verify: a check failed
  kSolverFailure = 2,
  kOrderingViolation = 3,
  kUsage = 64,
  kMissingInput = 66,
};

// Runs one command line. args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace chromabound::cli
