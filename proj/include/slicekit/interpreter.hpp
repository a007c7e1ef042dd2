//===- interpreter.hpp - Instrumented MiniJ interpreter ---------*- C++ -*-===//
//
// Big-step interpreter over normalized programs. Every executed statement
// part becomes a Step carrying its concrete def/use cells, so the trace is
// also the dynamic dependence graph: each use points at the step that last
// wrote the cell, and each step points at the predicate occurrence that
// governs it.
//
//===----------------------------------------------------------------------===//

#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "slicekit/cfg.hpp"
#include "slicekit/error.hpp"
#include "slicekit/slice.hpp"

namespace slicekit {

inline constexpr std::int64_t kDefaultStepLimit = 1'000'000;

/// A scalar (index == -1) or one array element. Declarations write the
/// whole array, recorded as index -1 as well.
struct Cell {
  std::string var;
  std::int64_t index = -1;

  friend auto operator<=>(const Cell &, const Cell &) = default;
};

inline constexpr int kUninitialized = -1;

struct CellUse {
  Cell cell;
  int def_step = kUninitialized;
};

struct Step {
  Label label;
  Part part = Part::Main;
  int part_index = 0;
  int occurrence = 0; // k-th execution of this (label, part, part_index)
  std::vector<CellUse> uses;
  std::vector<Cell> defs;
  std::optional<std::int64_t> value; // value written or printed
  std::optional<bool> outcome;       // predicates only
  int control_parent = -1;           // governing predicate step, -1 = Entry
};

/// Values of watched variables right after one execution of a watched
/// statement. Scalars are one-element vectors; arrays are copied whole.
struct Observation {
  Label label;
  int occurrence = 0;
  std::map<std::string, std::vector<std::int64_t>> values;

  friend bool operator==(const Observation &, const Observation &) = default;
};

struct Trace {
  std::vector<Step> steps; // empty when ExecOptions::record is false
  std::vector<std::int64_t> outputs;
  std::vector<Observation> observations;
  int consumed = 0;
  int exhausted_reads = 0;
  std::int64_t executed = 0; // step count, recorded or not
  std::optional<RuntimeError> fault;

  /// Index of the k-th Main execution of `label`, or -1.
  int find(Label label, int occurrence) const;
  /// Number of Main executions of `label`.
  int count(Label label) const;
};

/// A statement part whose produced value can be pinned.
struct PinPoint {
  Label label;
  Part part = Part::Main;
  int index = 0;

  friend auto operator<=>(const PinPoint &, const PinPoint &) = default;
};

struct ExecOptions {
  std::int64_t step_limit = kDefaultStepLimit;
  bool record = true;
  /// label -> variables to snapshot after each Main execution of label.
  std::map<Label, VarSet> watch;
  /// Initial contents for declared arrays (sizes must match).
  std::map<std::string, std::vector<std::int64_t>> initial_arrays;
  /// Forces the value produced by the assignment or read at a point; a
  /// pinned read still consumes its input value.
  std::map<PinPoint, std::int64_t> pinned;
};

/// Runs to completion; throws RuntimeError on a fault.
Trace execute(const Program &p, const InputStream &in, const ExecOptions &opts = {});

/// Like execute() but never throws RuntimeError: the partial trace is
/// returned with `fault` set.
Trace try_execute(const Program &p, const InputStream &in, const ExecOptions &opts = {});

/// True when `got` matches `want`: equal, or when `want` stopped on a fault,
/// `want` is a prefix of `got`.
bool observations_agree(const Trace &want, const Trace &got);

/// Truncating 64-bit arithmetic shared with the constant folders. Returns
/// nullopt for division or modulo by zero.
std::optional<std::int64_t> eval_binary(BinaryOp op, std::int64_t a, std::int64_t b);
std::int64_t eval_unary(UnaryOp op, std::int64_t a);

} // namespace slicekit
