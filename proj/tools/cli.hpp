#pragma once

#include <ostream>

namespace rohlin::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;      // bad flags, unreadable files, schema violations
inline constexpr int kExitNumerical = 3;  // a library operation reported an error

/// Runs one subcommand; reports go to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rohlin::cli
