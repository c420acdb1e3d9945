#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tauberlab::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitInputError = 2;

/// Runs one command line (without the program name). Subcommands: validate,
/// predict, verify, invert, classical, sweep, ck-index. Returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tauberlab::cli
