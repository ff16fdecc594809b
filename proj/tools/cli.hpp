#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ibsumm::cli {

/// Process exit codes.
enum ExitStatus : int {
  kSuccess = 0,
  kFatal = 1,
  kUsage = 2,
  kPartialFailure = 3,
};

/// Entry point for `ibsumm <command> [flags]`. Never reads standard input.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ibsumm::cli
