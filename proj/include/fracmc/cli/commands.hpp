#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fracmc::cli {

enum ExitCode : int {
    kExitSuccess = 0,
    kExitRuntime = 1,  ///< numerical failure or file I/O error
    kExitUsage = 2,    ///< bad flags or a parameter that fails validation
};

/// Runs the command line `fracmc <args...>` (args excludes the program name),
/// writing results to `out` unless --out is given and diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Version string recorded in every JSON meta block.
std::string version();

}  // namespace fracmc::cli
