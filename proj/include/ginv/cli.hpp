#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ginv {

/// Process exit codes of the ginv tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitHypothesisNotMet = 1,
  kExitInputError = 2,
  kExitInvariantViolation = 3,
};

/// Runs one invocation. `args` excludes the program name. JSON results go to
/// `out`, diagnostics to `err`. `seed_override` replaces --seed when set
/// (the tool passes GINV_SEED here).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            const char* seed_override = nullptr);

}  // namespace ginv
