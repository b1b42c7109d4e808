#pragma once

#include <iosfwd>

namespace pll {

enum ExitCode : int {
    kExitOk = 0,
    kExitConfig = 1,
    kExitDiverged = 2,
    kExitIo = 3,
};

/// Entry point of the pllsim tool; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace pll
