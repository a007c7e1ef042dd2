//===- parser.hpp - MiniJ front end -----------------------------*- C++ -*-===//

#pragma once

#include <string_view>

#include "slicekit/ast.hpp"

namespace slicekit {

/// Parses MiniJ source into a labeled (not yet normalized) Program. Name
/// resolution runs here: undeclared names, duplicate declarations and
/// scalar/array misuse are reported as ParseError with line/column.
/// `//@note <text>` comment lines are collected into Program::notes.
Program parse(std::string_view source);

/// parse() followed by normalize().
Program parse_normalized(std::string_view source);

} // namespace slicekit
