#include <cstdio>
#include <ostream>

#include "cli/app.hpp"
#include "cli/commands.hpp"
#include "vring/errors.hpp"
#include "vring/verify.hpp"

namespace vring::cli {

int cmd_verify(const VerifyCliOptions& opt, std::ostream& out, std::ostream&)
{
    VerifyOptions options;
    if (opt.inject_fault == "inverse-sign") {
        // Flips the sign of the (2,3) entry of the closed-form inverse.
        options.inverse = [](const FrameMatrixEntries& e) {
            Mat3 m = frame_matrix_inverse(e);
            m[1][2] = -m[1][2];
            return m;
        };
    } else if (opt.inject_fault != "none") {
        throw ConfigError("--inject-fault must be none or inverse-sign");
    }

    const auto results = run_verify_suite(options);
    bool all = true;
    char line[160];
    std::snprintf(line, sizeof line, "%-24s %6s %14s %12s  %s\n", "check", "cases", "worst", "limit",
                  "result");
    out << line;
    for (const auto& r : results) {
        std::snprintf(line, sizeof line, "%-24s %6d %14.6e %2s%10.3e  %s\n", r.name.c_str(), r.cases,
                      r.worst, r.upper_bound ? "<=" : ">=", r.tolerance, r.passed ? "PASS" : "FAIL");
        out << line;
        all = all && r.passed;
    }
    return all ? kOk : kCheckFailed;
}

} // namespace vring::cli
