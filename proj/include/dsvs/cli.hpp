#pragma once

#include <iosfwd>
#include <string_view>
#include <vector>

namespace dsvs::cli {

/// Exit codes of run().
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitSingular = 3;

/// A decimal literal or a pi expression: "pi", "-pi/2", "3*pi/4", "2pi".
/// Throws UsageError.
double parse_time(std::string_view text);
/// Comma-separated parse_time values.
std::vector<double> parse_time_list(std::string_view text);

/// Runs the command line: catalog, render, verify or analyze. Failures
/// print one "error: ..." line on err.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dsvs::cli
