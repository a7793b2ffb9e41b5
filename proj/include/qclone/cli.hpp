#pragma once

#include <ostream>

namespace qclone {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // verification or solver failure
inline constexpr int kExitUsage = 2;    // bad arguments, unreadable input, parse errors

/// Entry point of the `qclone` tool. Never throws; all diagnostics go to
/// `err` and the result is one of the exit codes above.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qclone
