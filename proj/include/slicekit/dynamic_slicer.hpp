//===- dynamic_slicer.hpp - Dynamic and simultaneous slicing ----*- C++ -*-===//

#pragma once

#include "slicekit/interpreter.hpp"
#include "slicekit/slice.hpp"

namespace slicekit {

/// Steps backward-reachable in the dynamic dependence graph from `seeds`
/// (data links to defining steps plus governing predicate occurrences).
std::set<int> dynamic_closure(const Trace &t, std::set<int> seeds);

/// Seed steps for variables `vars` observed at step `at`: the step itself
/// when `referenced`, otherwise the last steps before it that wrote a cell
/// of some v ∈ vars. The governing predicate occurrence is always added.
std::set<int> dynamic_seeds(const Trace &t, int at, const VarSet &vars, bool referenced);

/// Dynamic slice for one input. Throws OccurrenceNotFound when the
/// statement runs fewer than `occurrence.index` times, and RuntimeError if
/// the program faults before reaching it.
Slice dynamic_slice(const Program &p, const DynamicCriterion &c,
                    std::int64_t step_limit = kDefaultStepLimit);

/// Iterative simultaneous dynamic slice: start from the union of the
/// per-input dynamic slices at the statement's last occurrence, grow by
/// closing from every occurrence of every sliced statement in every trace
/// until nothing changes, then verify by re-executing the projection. On a
/// verification mismatch the static backward slice is returned with
/// fell_back set.
Slice simultaneous_dynamic_slice(const Program &p, const SimultaneousCriterion &c,
                                 std::int64_t step_limit = kDefaultStepLimit);

/// Labels of the steps in `steps`.
LabelSet step_labels(const Trace &t, const std::set<int> &steps);

} // namespace slicekit
