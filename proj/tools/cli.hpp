#pragma once

#include <iosfwd>

namespace hyperaccel::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

// Parses argv (argv[0] is the program name), validates every flag, then runs
// the subcommand. Returns 0 when everything passes, 1 on a verification
// failure and 2 on a usage error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hyperaccel::cli
