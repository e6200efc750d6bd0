#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qbg::cli {

enum ExitCode : int {
  kOk = 0,
  kConfigError = 1,   // bad arguments, unreadable or malformed files
  kInvalidState = 2,  // input matrix is not a density matrix
  kSoundness = 3,     // a generated state violated a bound
};

/// Runs the qbg command line. args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qbg::cli
