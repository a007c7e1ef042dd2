//===- slice.hpp - Slicing criteria and results -----------------*- C++ -*-===//

#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "slicekit/ast.hpp"

namespace slicekit {

using VarSet = std::set<std::string>;

/// ⟨S, V⟩
struct StaticCriterion {
  Label statement;
  VarSet variables;
};

/// Values consumed by successive read() calls. `names` only documents the
/// values (e.g. "n=2") and has no effect on execution.
struct InputStream {
  std::vector<std::int64_t> values;
  std::vector<std::string> names;
};

/// The k-th execution (k >= 1) of a statement.
struct Occurrence {
  Label statement;
  int index = 1;
};

struct DynamicCriterion {
  InputStream input;
  Occurrence occurrence;
  VarSet variables;
};

struct SimultaneousCriterion {
  std::vector<InputStream> inputs;
  Label statement;
  VarSet variables;
};

/// Each fixed variable takes its value at its first definition.
struct ConditionedCriterion {
  std::map<std::string, std::int64_t> fixed;
  Label statement;
  VarSet variables;
};

using SliceCriterion = std::variant<StaticCriterion, DynamicCriterion,
                                    SimultaneousCriterion, ConditionedCriterion>;

enum class Technique { Backward, Forward, Dynamic, Simultaneous, Conditioned, Amorphous };

const char *to_string(Technique t);

struct Slice {
  LabelSet labels;
  Technique technique = Technique::Backward;
  SliceCriterion criterion;
  Program projected;
  bool fell_back = false;   // simultaneous: verification failed, static used
  int exhausted_reads = 0;  // dynamic flavours: reads past the input end
  std::vector<std::string> notes;
};

/// Checks that the statement is an executable label of `p` and every
/// variable is declared; throws AnalysisError(InvalidCriterion) otherwise.
void validate_criterion(const Program &p, Label statement, const VarSet &vars);

/// Slice labels plus declarations, closed under enclosing predicates.
LabelSet complete_slice(const Program &p, LabelSet labels);

} // namespace slicekit
