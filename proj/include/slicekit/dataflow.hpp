//===- dataflow.hpp - Reaching definitions and liveness ---------*- C++ -*-===//

#pragma once

#include <compare>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "slicekit/cfg.hpp"

namespace slicekit {

/// A definition of `var` made at CFG node `node`.
struct Definition {
  std::string var;
  int node;

  friend auto operator<=>(const Definition &, const Definition &) = default;
};

using DefSet = std::set<Definition>;

struct ReachingDefs {
  std::vector<DefSet> in;
  std::vector<DefSet> out;

  /// Nodes whose definition of `var` reaches the entry of `node`.
  std::vector<int> reaching(int node, const std::string &var) const;
};

/// Least fixpoint of out = gen ∪ (in − kill), in = ∪ out(preds). Nodes are
/// visited round-robin in ascending order until a sweep changes nothing.
ReachingDefs reaching_definitions(const Cfg &cfg);

struct Liveness {
  std::vector<std::set<std::string>> in;
  std::vector<std::set<std::string>> out;
};

/// Backward liveness over the node def/use sets. `extra_uses` adds pseudo
/// uses at chosen nodes (the criterion point, Exit); only `kills` end a live
/// range, so array element stores never do.
Liveness live_variables(const Cfg &cfg,
                        const std::map<int, std::set<std::string>> &extra_uses);

} // namespace slicekit
