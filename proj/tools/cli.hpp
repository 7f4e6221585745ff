#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cpm::cli {

/// Exit statuses shared by every subcommand.
enum Exit : int {
  kOk = 0,
  kUsage = 1,
  kInvalid = 2,
  kFalse = 3,
};

/// Runs one command line (without the program name). Results go to `out`,
/// diagnostics and load warnings to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cpm::cli
