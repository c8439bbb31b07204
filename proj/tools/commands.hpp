#pragma once

#include <iosfwd>

namespace quasidiff::cli {

/// Exit codes of the command-line driver.
enum ExitCode : int {
  kPass = 0,
  kCheckFailed = 1,
  kUsageError = 2,
  kNumericFailure = 3,
};

/// Parses argv and runs one subcommand; never throws.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace quasidiff::cli
