//===- cli.hpp - Command-line front end -------------------------*- C++ -*-===//

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "slicekit/slice.hpp"

namespace slicekit {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitParse = 2,
  kExitAnalysis = 3,
};

/// Parses `--input` text: comma-separated integers in read order. Tokens
/// may be annotated as `name=value`; the names are kept for documentation.
/// Throws std::invalid_argument on malformed text.
InputStream parse_input(const std::string &text);

/// Runs one command. `args` excludes the program name. Output goes to `out`,
/// diagnostics to `err`; the return value is an ExitCode.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace slicekit
