#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace freemax {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitBoundViolated = 3;

/// Entry point of the command-line tool. args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            bool out_is_terminal = false);

} // namespace freemax
