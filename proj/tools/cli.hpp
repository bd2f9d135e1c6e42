#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cwerank::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kUsage = 2;   // bad arguments or unreadable/unwritable file
inline constexpr int kParse = 3;   // malformed or inconsistent input document
inline constexpr int kCompute = 4; // scoring or analysis failed

/// Runs the command line `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace cwerank::cli
