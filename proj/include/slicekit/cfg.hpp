//===- cfg.hpp - Control-flow graph and postdominators ----------*- C++ -*-===//
//
// CFG nodes are statement *parts*. Most labels map to one Main node; a `for`
// label additionally owns one Init node per init assignment (placed before
// its predicate) and one Update node per update assignment (placed on the
// back edge). Node 0 is Entry and node 1 is Exit.
//
//===----------------------------------------------------------------------===//

#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "slicekit/ast.hpp"

namespace slicekit {

/// Pseudo-variable threaded through every read(): each read uses and defines
/// it, so the position in the input stream is a data dependence.
inline constexpr const char *kInputCursor = "@input";

enum class Part { Entry, Exit, Main, Init, Update };
enum class BranchTag { Seq, True, False };

const char *to_string(Part p);
const char *to_string(BranchTag t);

struct DefUse {
  std::set<std::string> defs;
  std::set<std::string> uses;
  /// Subset of defs that kill earlier definitions (scalars, the input cursor
  /// and declarations). Array element stores are weak updates.
  std::set<std::string> kills;
};

struct CfgNode {
  Label label; // kEntryLabel for Entry/Exit
  Part part = Part::Main;
  int index = 0; // position within the init/update list
  DefUse du;
  std::string text;
  bool predicate = false;
};

struct CfgEdge {
  int from;
  int to;
  BranchTag tag;
};

class Cfg {
public:
  static constexpr int kEntry = 0;
  static constexpr int kExit = 1;

  const std::vector<CfgNode> &nodes() const { return nodes_; }
  const CfgNode &node(int n) const { return nodes_[n]; }
  int size() const { return static_cast<int>(nodes_.size()); }
  const std::vector<CfgEdge> &edges() const { return edges_; }
  const std::vector<int> &succs(int n) const { return succs_[n]; }
  const std::vector<int> &preds(int n) const { return preds_[n]; }

  /// Main node of a label, or -1.
  int main_node(Label l) const;
  /// Every node owned by a label, in execution order (init, main, update).
  std::vector<int> nodes_of(Label l) const;

  int add_node(CfgNode n);
  void add_edge(int from, int to, BranchTag tag);

private:
  std::vector<CfgNode> nodes_;
  std::vector<CfgEdge> edges_;
  std::vector<std::vector<int>> succs_;
  std::vector<std::vector<int>> preds_;
  std::map<Label, std::vector<int>> by_label_;
};

/// Structured CFG for a normalized program.
Cfg build_cfg(const Program &p);

/// Label-level view of the per-node def/use sets.
std::map<Label, DefUse> def_use(const Cfg &cfg);

/// Immediate postdominators over the CFG augmented with Entry -> Exit.
struct PostDomTree {
  std::vector<int> ipdom; // ipdom[Exit] == Exit

  /// True when `a` postdominates `b` (reflexive).
  bool postdominates(int a, int b) const;
};

PostDomTree postdominators(const Cfg &cfg);

struct ControlDep {
  int predicate; // CFG node (Entry or a predicate node)
  int node;
  BranchTag tag;

  friend auto operator<=>(const ControlDep &, const ControlDep &) = default;
};

/// Ferrante-Ottenstein-Warren control dependence: for every edge A->B where
/// B does not postdominate A, every node on the postdominator-tree path from
/// B up to (excluding) ipdom(A) is control dependent on A.
std::vector<ControlDep> control_dependences(const Cfg &cfg, const PostDomTree &pdt);

} // namespace slicekit
