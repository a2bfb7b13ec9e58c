#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace vring::cli {

enum ExitCode : int {
    kOk = 0,
    kCheckFailed = 1,
    kBadInput = 2,
    kInfeasible = 3,
    kCorruptLog = 4,
};

/// Runs the tool with argv-style arguments (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace vring::cli
