#pragma once

#include <iosfwd>

namespace socnav::cli {

enum ExitCode : int { kOk = 0, kConfigError = 2, kRuntimeFailure = 3 };

/// Entry point for the `socnav` tool: `run`, `bench`, and `replay` subcommands.
/// Returns 0 on success, 2 for usage or configuration errors, 3 for runtime failures.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace socnav::cli
