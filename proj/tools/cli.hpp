#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bergman::cli {

enum ExitCode : int {
    kSuccess = 0,
    kVerificationFailure = 1,
    kUsageError = 2,
    kNonConvergence = 3,
};

/// Runs one command line (without the program name). CSV and reports go to
/// `out`; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bergman::cli
