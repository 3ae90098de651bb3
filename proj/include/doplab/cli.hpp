#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace doplab::cli {

/// Process exit codes.
enum ExitCode : int {
  kSuccess = 0,
  kIdentityFailure = 1,
  kUsageError = 2,
  kDegenerate = 3,
};

/// Runs the command line `args` (without the program name). Artifacts go to
/// `out` unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace doplab::cli
