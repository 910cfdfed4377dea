#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mmdnov::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUserError = 1;
inline constexpr int kExitRuntimeError = 2;
/// Only with --fail-on-reject, when the test rejected H0.
inline constexpr int kExitRejected = 3;

/// Runs one invocation. `args` excludes the program name. Result documents
/// go to --out or `out`; diagnostics go to `err` as a single line.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mmdnov::cli
