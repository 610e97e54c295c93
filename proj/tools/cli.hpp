#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace levy::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kCheckFailed = 1;
inline constexpr int kValidation = 2;
inline constexpr int kStructure = 3;
inline constexpr int kUsage = 64;

/// args excludes the program name. Results go to `out` (or --out),
/// diagnostics and JSON errors to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace levy::cli
