#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bilateral::cli {

enum ExitCode : int { kOk = 0, kValidationFailure = 1, kUsageError = 2 };

/// Runs one `gft` invocation. argv[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bilateral::cli
