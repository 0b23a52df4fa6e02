#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "nearsim/cli.hpp"

namespace nearsim::testing {

struct CliOutcome {
  int code = 0;
  std::string out;
  std::string err;
};

inline CliOutcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "nearsim");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace nearsim::testing
