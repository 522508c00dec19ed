#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace limcf::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kInvalidParameter = 2,
    kDomain = 3,
    kThreshold = 4,
    kCurvatureZero = 5,
    kOdeSingular = 6,
};

// Runs one command line (without the program name). Reports go to `out`,
// diagnostics to `err`; the return value is the process exit code.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

// Appends `--key value` for every key=value line of the file whose option is
// not already present in args (flags on the command line win).
std::vector<std::string> merge_config(std::vector<std::string> args);

} // namespace limcf::cli
