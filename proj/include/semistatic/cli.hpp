#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace semistatic::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNegative = 1;  // not semistatic, inconsistent, rank deficient
inline constexpr int kExitError = 2;     // usage, parse or validation error

struct RunConfig {
  std::string command;
  std::vector<std::string> inputs;
  std::string output;  // empty: the `out` stream
  bool csv = false;
  bool meta = false;
  std::size_t jobs = 1;
};

const std::vector<std::string_view>& command_names();

/// Runs one command. Diagnostics go to `err`; the report goes to `out` or to
/// config.output. Commands that take one file accept several; their reports
/// are then collected into an array in input order, computed on up to
/// config.jobs threads.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace semistatic::cli
