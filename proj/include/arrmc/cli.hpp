#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace arrmc {

/// Exit codes of the command line tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitPropertyFalse = 1,
    kExitInputError = 2,
    kExitNumericError = 3,
};

struct JobSpec {
    std::string command;
    std::vector<std::string> inputs;
    std::optional<std::string> lambda;
    std::optional<std::string> mu;
    std::optional<std::string> line;  // "0,1"
    std::vector<std::string> bases;   // each "2" or "1/2,3"
    double tol = 1e-10;
    double iso_tol = 1e-6;
    double rank_tol = 1e-9;
    size_t samples = 20;
    unsigned long long seed = 0x5eed;
    bool unchecked = false;
    bool allow_non_good = false;
    bool json = false;     // machine-readable report on stdout
    bool shifted = false;  // rh-verify: also report lambda + 1
    std::optional<std::string> out;
};

/// Resolves a relative input path against ARRMC_CORPUS_DIR when it does not
/// exist relative to the working directory.
std::string resolve_input(const std::string& path);

/// Runs one job, writing the report to out and diagnostics to err.
int run(const JobSpec& job, std::ostream& out, std::ostream& err);

} // namespace arrmc
