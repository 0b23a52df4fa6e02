#pragma once

#include <iosfwd>

namespace nearsim::cli {

enum ExitCode : int {
  kOk = 0,
  kFatal = 1,
  kUsage = 2,
  // `audit` found at least one similar pair the strategy dismissed.
  kMissedPairs = 3,
};

// Entry point behind the `nearsim` binary: run, compare, audit, shingle.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace nearsim::cli
