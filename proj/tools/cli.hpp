#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qvirial::cli {

enum ExitCode : int {
  kOk = 0,
  kInvalidInput = 2,
  kComparisonFailed = 3,
  kCheckFailed = 4,
};

/// Runs the command line given without the program name, e.g. {"i2-sweep", "--rho", "0.5"}.
/// CSV goes to `out` unless --out is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Version string embedded in CSV provenance blocks.
const char* version();

}  // namespace qvirial::cli
