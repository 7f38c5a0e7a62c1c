#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gdt::cli {

enum ExitCode : int { kSuccess = 0, kInvalidInput = 2, kNumericFailure = 3 };

/// Runs one command line (without the program name). Reports go to `out`;
/// errors go to `err` as one JSON object per line.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gdt::cli
