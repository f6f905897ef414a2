#pragma once

#include <iosfwd>

namespace polcheck::cli {

/// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitThresholdViolated = 2;

/// Entry point of the `polcheck` tool; all output goes to `out`/`err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace polcheck::cli
