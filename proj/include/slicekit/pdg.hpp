//===- pdg.hpp - Program dependence graph -----------------------*- C++ -*-===//
//
// The PDG is label-level: a `for` statement's init, predicate and update
// parts collapse onto the one label, so self-edges are common (5 -> 5 for a
// loop counter). Entry appears as kEntryLabel.
//
//===----------------------------------------------------------------------===//

#pragma once

#include <compare>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "slicekit/cfg.hpp"
#include "slicekit/dataflow.hpp"

namespace slicekit {

enum class DepKind { Data, Control };

struct PdgEdge {
  Label from;
  Label to;
  DepKind kind;
  std::string var; // data edges only
  BranchTag tag = BranchTag::Seq; // control edges only

  friend auto operator<=>(const PdgEdge &, const PdgEdge &) = default;
};

struct Pdg {
  Cfg cfg;
  PostDomTree pdt;
  ReachingDefs rd;

  LabelSet nodes; // program labels plus kEntryLabel
  std::vector<PdgEdge> edges; // sorted, unique
  std::map<Label, LabelSet> preds;
  std::map<Label, LabelSet> succs;

  std::set<std::pair<Label, Label>> edge_pairs(DepKind kind) const;
  LabelSet control_parents(Label l) const;
  /// Statement text of a label (its predicate header for compound ones).
  std::string text(Label l) const;
};

Pdg build_pdg(const Program &p);

/// Assembles a PDG from precomputed parts. Data edges come from `rd`;
/// control edges from `cds`. When `live` is non-empty, CFG nodes whose flag
/// is false contribute no edges.
Pdg assemble_pdg(Cfg cfg, PostDomTree pdt, ReachingDefs rd,
                 const std::vector<ControlDep> &cds, const std::vector<bool> &live = {});

/// Seeds plus every node with a PDG path into (backward) / out of (forward)
/// some seed.
LabelSet backward_reachable(const Pdg &g, const LabelSet &seeds);
LabelSet forward_reachable(const Pdg &g, const LabelSet &seeds);

} // namespace slicekit
