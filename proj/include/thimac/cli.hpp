#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace thimac {

enum ExitStatus : int { kExitOk = 0, kExitFalse = 1, kExitUsage = 2 };

/// Runs one command line. `args` excludes the program name.
/// Returns 0 on success or a true verdict, 1 when the model is invalid or the
/// verdict false, 2 on a usage or I/O error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace thimac
