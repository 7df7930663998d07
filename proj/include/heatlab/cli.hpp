#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace heatlab::cli {

// Exit codes of the command-line tool.
enum ExitCode : int {
  kSuccess = 0,
  kViolation = 1,     // a checked property or theorem check failed
  kInconclusive = 2,  // uncertainty too wide to decide
  kUsage = 64,
  kDataError = 65,
  kSoftware = 70,
  kIoError = 74,
};

// "lin:a:b:n", "log:a:b:n" or "list:t1,t2,..."; include_zero prepends t = 0.
std::vector<double> parse_time_grid(const std::string& spec, bool include_zero = false);

// Subcommands: curve | verify | cm | report. Diagnostics go to err.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv);

}  // namespace heatlab::cli
