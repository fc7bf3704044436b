#pragma once

#include <iosfwd>

namespace ggm {

/// Exit codes of the command-line front end.
enum ExitCode : int {
    exit_ok = 0,
    exit_verification_failed = 1,
    exit_config_error = 2,
    exit_numerical_failure = 3,
};

/// Entry point behind the `ggm` executable. Output that is not redirected
/// with --out goes to `out`; diagnostics go to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace ggm
