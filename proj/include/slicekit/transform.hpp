//===- transform.hpp - Normalization and projection -------------*- C++ -*-===//

#pragma once

#include "slicekit/ast.hpp"

namespace slicekit {

/// Re-assigns labels 1..N in source order (declarations first, then a
/// pre-order walk of the body).
void relabel(Program &p);

/// Splits chained assignments (right to left), rewrites compound assignments
/// and ++/-- into plain `=`, hoists in-expression increments into their own
/// assignments, then relabels. Idempotent.
Program normalize(const Program &p);

/// Deletes every labeled statement outside `keep`. Declarations are always
/// retained and labels are preserved, so results can be correlated with `p`.
/// An else-branch emptied by the projection is dropped; a kept predicate
/// keeps its (possibly empty) block. Children of a deleted compound statement
/// that are themselves kept are spliced into the enclosing block.
/// Throws AnalysisError(UnknownLabel) when `keep` names a label absent from p.
Program project(const Program &p, const LabelSet &keep);

} // namespace slicekit
