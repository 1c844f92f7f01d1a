#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace logroots {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitRuntime = 2, kExitExperimentFailed = 3 };

/// Runs the command line `args` (without the program name). Output files are
/// written as requested; everything else goes to `out` / `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace logroots
