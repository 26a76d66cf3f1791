#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace lwsim::cli {

/// Exit codes of the command-line front end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumeric = 3;

/// Runs one command. `args` excludes the program name. Results go to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace lwsim::cli
