//===- conditioned.hpp - Conditioned (quasi-static) slicing -----*- C++ -*-===//

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "slicekit/cfg.hpp"
#include "slicekit/interpreter.hpp"
#include "slicekit/slice.hpp"

namespace slicekit {

/// Flat constant lattice: Bottom (no value reaches yet) < Const(k) < Top.
struct ConstValue {
  enum Kind { Bottom, Const, Top } kind = Bottom;
  std::int64_t value = 0;

  static ConstValue bottom() { return {}; }
  static ConstValue constant(std::int64_t v) { return {Const, v}; }
  static ConstValue top() { return {Top, 0}; }

  friend bool operator==(const ConstValue &, const ConstValue &) = default;
};

ConstValue join(ConstValue a, ConstValue b);

using ConstEnv = std::map<std::string, ConstValue>;

struct ConstantPropagation {
  std::vector<bool> executable;      // per CFG node
  std::vector<bool> edge_executable; // per entry of Cfg::edges()
  std::vector<ConstEnv> in;     // state on entry to each node
  /// Labels none of whose CFG nodes can ever execute.
  LabelSet pruned;
};

/// Where each fixed variable takes its value: its first scalar definition in
/// CFG order (a read, assignment or for-init part), or its declaration when
/// it has none. Throws ContradictoryFixing when that definition assigns a
/// different literal (or the declaration's implicit 0), InvalidCriterion for
/// arrays and unknown names.
std::map<std::string, PinPoint>
fixing_points(const Program &p, const Cfg &cfg,
              const std::map<std::string, std::int64_t> &fixed);

/// Conditional constant propagation: branches whose predicate folds to a
/// constant only make the taken side executable. Arrays are always Top.
ConstantPropagation propagate_constants(const Program &p, const Cfg &cfg,
                                        const std::map<std::string, std::int64_t> &fixed);

/// Static backward slice under the fixing: data dependences are computed
/// over the executable CFG edges only, control dependences come from the
/// unrestricted CFG, and statements that can never execute contribute no
/// edges. The result is therefore a subset of the plain static slice. When
/// the criterion itself can never execute the slice holds only the
/// declarations and a note says so.
Slice conditioned_slice(const Program &p, const ConditionedCriterion &c);

} // namespace slicekit
