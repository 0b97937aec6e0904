#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cauchon::cli {

enum ExitCode : int {
  kSuccess = 0,
  kCheckFailed = 1,
  kUsage = 2,
  kGuardrail = 3,
  kInputParse = 4,
};

inline constexpr int kDefaultMaxCells = 30;

// Runs the command line `args` (without the program name). Diagram grids
// given as "-" are read from `in`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace cauchon::cli
