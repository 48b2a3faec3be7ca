#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ucf {

/// Exit statuses shared by every subcommand.
enum ExitStatus : int {
    kExitPass = 0,
    kExitCounterexample = 1,
    kExitError = 2,
};

/// Entry point behind the `ucf` binary. args[0] is the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace ucf
