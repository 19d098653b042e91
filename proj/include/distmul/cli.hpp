#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace distmul::cli {

enum ExitCode : int {
  kOk = 0,
  kVerificationFailed = 1,
  kUsage = 2,
  kNumericFailure = 3,
};

/// Runs `distmul <command> [flags]`. args excludes the program name.
/// Output is streamed to `out` (one JSON object per line, CSV rows, or plain
/// text); diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Splits `a:b:step` into the sample points a, a + step, ..., <= b.
std::vector<double> parse_grid(const std::string& spec);

/// Reads `key=value` lines ('#' starts a comment) and returns them as
/// `--key value` arguments for every key not already present in `explicit_args`.
std::vector<std::string> config_arguments(const std::string& path,
                                          const std::vector<std::string>& explicit_args);

}  // namespace distmul::cli
