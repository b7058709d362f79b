#pragma once

#include <iosfwd>

namespace miura::app {

/// Parses the command line and dispatches. Returns the process exit status:
/// 0 success, 1 solver failure, 2 usage error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace miura::app
