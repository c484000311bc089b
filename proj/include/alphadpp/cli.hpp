#pragma once

namespace alphadpp {

// Entry point of the command line tool.  Exit codes: 0 = success / all checks
// passed, 1 = a mathematical check failed, 2 = configuration or usage error
// (including resource guards), 3 = file I/O error.
int run_cli(int argc, const char* const* argv);

}  // namespace alphadpp
