#pragma once

#include <string>
#include <vector>

namespace entrogeo::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

struct Result {
  int exit_code = kExitOk;
  std::string out;
  std::string err;
};

/// Runs one command. `args` excludes the program name. Output is a single
/// JSON document on `out`; diagnostics go to `err`.
Result execute(const std::vector<std::string>& args);

}  // namespace entrogeo::cli
