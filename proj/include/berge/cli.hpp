#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace berge {

/// Exit codes of the `berge` tool.
enum ExitCode : int {
    exit_ok = 0,
    exit_failed = 1,        ///< verification failed, or a construction error without a certificate
    exit_divisibility = 2,  ///< n does not divide C(n,k) - |M|
    exit_infeasible = 3,    ///< no perfect matching; Hall certificate on stderr
    exit_size_cap = 4,
    exit_parse = 5,         ///< unreadable input or bad arguments
};

/// Runs one `berge` invocation; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace berge
