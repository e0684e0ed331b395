#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lexorank::cli {

enum ExitCode : int {
  kOk = 0,
  kRuntimeError = 1,
  kUsageError = 2,
};

/// Runs one invocation. args[0] is the program name.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Round to 12 significant digits, the precision every report is written at.
double round12(double value);

}  // namespace lexorank::cli
