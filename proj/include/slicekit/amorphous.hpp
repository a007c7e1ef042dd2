//===- amorphous.hpp - Amorphous slicing ------------------------*- C++ -*-===//
//
// An amorphous slice starts from the syntax-preserving static slice and runs
// a fixed set of semantics-preserving rewrites until none applies. All
// passes preserve the values of the criterion variables at the criterion
// statement (or, once a top-level criterion statement that does not mention
// them has been deleted, at program exit).
//
//===----------------------------------------------------------------------===//

#pragma once

#include <string>
#include <vector>

#include "slicekit/slice.hpp"

namespace slicekit {

enum class PassKind {
  CopyPropagate,
  ConstantFold,
  LoopFinalValue,
  DeadCodeEliminate,
  EmptyLoopRemoval,
  IndexNormalize,
};

const char *to_string(PassKind k);

/// CopyPropagate, ConstantFold, LoopFinalValue, DeadCodeEliminate,
/// EmptyLoopRemoval, IndexNormalize.
std::vector<PassKind> default_pass_order();

/// One application of a rewrite; returns `p` unchanged when it does not
/// match. The criterion decides liveness and which statement must survive.
Program apply_pass(PassKind k, const Program &p, const StaticCriterion &c);

struct AmorphousOptions {
  std::vector<PassKind> order = default_pass_order();
  int max_rounds = 0; // 0 = labels × passes
};

struct AmorphousSlice {
  Program program;
  Slice syntax_preserving;  // the static slice the passes started from
  bool criterion_kept = true; // false once the criterion statement is gone
  int rounds = 0;
  std::vector<std::string> log; // "round N: Pass" for every firing
};

AmorphousSlice amorphous_slice(const Program &p, const StaticCriterion &c,
                               const AmorphousOptions &opts = {});

} // namespace slicekit
