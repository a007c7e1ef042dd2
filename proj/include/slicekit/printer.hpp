//===- printer.hpp - MiniJ unparser -----------------------------*- C++ -*-===//

#pragma once

#include <string>

#include "slicekit/ast.hpp"

namespace slicekit {

struct UnparseOptions {
  bool show_labels = false; // append `// (N)` to each statement's first line
};

/// Deterministic pretty-printer; parse(unparse(p)) is structurally equal to
/// p whenever p carries parse-order labels. Empty blocks print as `{ }` and
/// an else-branch holding a single if prints as `else if`.
std::string unparse(const Program &p, const UnparseOptions &opts = {});

std::string expr_text(const ExprPtr &e);
std::string assign_text(const Assign &a); // without trailing ';'

/// One-line canonical text of a statement's own header: `sum = 0;`,
/// `if (a > 0)`, `for (i = 0; i < 24; i = i + 1)`, `int a, b[3];`.
std::string statement_text(const Stmt &s);

} // namespace slicekit
