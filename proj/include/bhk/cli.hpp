#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace bhk {

enum ExitCode : int { ExitOk = 0, ExitVerificationFailure = 1, ExitInputError = 2 };

/// Command-line front end. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bhk
