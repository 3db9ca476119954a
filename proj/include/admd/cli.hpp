#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace admd::cli {

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitNotConverged = 1;
inline constexpr int kExitUsage = 2;

/// Entry point of the `admd` tool. `args` excludes the program name.
///
///   admd run    (--example ID | --problem-file PATH) [options]
///   admd verify (--example ID | --problem-file PATH) [options]
///   admd bench  [--examples 1,2,...] [options]
///
/// Exit codes: 0 success, 1 the solver did not converge (or, for verify, a
/// check failed), 2 usage or parse error.
int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace admd::cli
