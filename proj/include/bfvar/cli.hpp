// Command-line front end: `bfvar <command> --config <file>` with commands
// moments, bootstrap, oracle, angles, and pmp. See the README for the
// configuration schema and the artifacts each command writes.

#pragma once

#include <string>
#include <vector>

namespace bfvar::cli {

/// Runs the tool on the given arguments (excluding argv[0]) and returns
/// the process exit code: 0 success, 1 numerical/statistical failure,
/// 2 input error.
int run(const std::vector<std::string>& args);

}  // namespace bfvar::cli
