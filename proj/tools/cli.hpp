#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace accode::cli {

enum ExitCode : int {
  kOk = 0,
  kIoFailure = 1,
  kInvalid = 2,
};

// Runs the command line `args` (args[0] is the program name). Data written
// with `--out -` goes to `out`; messages and warnings go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace accode::cli
