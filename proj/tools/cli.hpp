#pragma once

#include <ostream>

namespace arw {

/// Entry point of the `arw` command; returns the process exit code
/// (0 success, 1 validation or usage error, 2 numerical failure).
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace arw
