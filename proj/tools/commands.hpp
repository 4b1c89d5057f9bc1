#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace aclsd::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

// Runs one command line (without the program name). Normal output goes to
// `out`, diagnostics and help to `err` unless a file is named by --out or
// --summary.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// 17 significant digits, locale independent.
std::string format_double(double v);

}  // namespace aclsd::cli
