#pragma once

#include <iosfwd>

namespace zladder::cli {

// Full command-line front end. Writes results to out and diagnostics to
// err; returns 0 on success, 1 on domain/parameter/usage errors, 2 on
// convergence/tolerance failures.
int cli_main(int argc, const char* const* argv, std::ostream& out,
             std::ostream& err);

}  // namespace zladder::cli
