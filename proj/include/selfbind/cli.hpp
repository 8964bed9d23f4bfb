#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace selfbind::cli {

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kNumericalFailure = 1;
inline constexpr int kUsageError = 2;

/// Runs one CLI invocation. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses "start:stop:step" (inclusive) or a comma-separated list.
std::vector<double> parse_ratio_list(const std::string& spec);

}  // namespace selfbind::cli
