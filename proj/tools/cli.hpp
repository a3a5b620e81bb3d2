#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace symlra::cli {

enum ExitCode : int { ok = 0, numerical_failure = 1, input_error = 2 };

/// Entry point of the `symlra` tool. Reads "-" inputs from `in`, writes
/// results to `out` and one-line diagnostics to `err`.
int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

/// Convenience overload; args excludes the program name.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace symlra::cli
