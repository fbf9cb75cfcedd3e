#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace bergman::selftest {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
    double limit_seconds = 0.0;
};

/// Entry point of the command-line front end: (argv without program name, out, err) -> exit code.
using CliRunner =
    std::function<int(const std::vector<std::string>&, std::ostream&, std::ostream&)>;

/// Runs the twelve acceptance criteria in order. A criterion passes only if its
/// numeric checks hold and it finishes within its time budget.
std::vector<CriterionResult> run_acceptance(const CliRunner& cli, unsigned workers = 1);

/// One line per criterion: "PASS  3 cross-formula agreement (1.2 s / 30 s): detail".
void print_results(std::ostream& out, const std::vector<CriterionResult>& results);

}  // namespace bergman::selftest
