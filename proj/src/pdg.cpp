//===- pdg.cpp - Program dependence graph ---------------------------------===//

#include "slicekit/pdg.hpp"

namespace slicekit {

namespace {

LabelSet reach(const std::map<Label, LabelSet> &adj, const LabelSet &seeds) {
  LabelSet seen = seeds;
  std::vector<Label> work(seeds.begin(), seeds.end());
  while (!work.empty()) {
    Label l = work.back();
    work.pop_back();
    auto it = adj.find(l);
    if (it == adj.end())
      continue;
    for (Label m : it->second)
      if (seen.insert(m).second)
        work.push_back(m);
  }
  return seen;
}

} // namespace

std::set<std::pair<Label, Label>> Pdg::edge_pairs(DepKind kind) const {
  std::set<std::pair<Label, Label>> out;
  for (const PdgEdge &e : edges)
    if (e.kind == kind)
      out.insert({e.from, e.to});
  return out;
}

LabelSet Pdg::control_parents(Label l) const {
  LabelSet out;
  for (const PdgEdge &e : edges)
    if (e.kind == DepKind::Control && e.to == l)
      out.insert(e.from);
  return out;
}

std::string Pdg::text(Label l) const {
  if (l.is_entry())
    return "Entry";
  int n = cfg.main_node(l);
  return n < 0 ? std::string() : cfg.node(n).text;
}

Pdg assemble_pdg(Cfg cfg, PostDomTree pdt, ReachingDefs rd,
                 const std::vector<ControlDep> &cds, const std::vector<bool> &live) {
  Pdg g;
  g.cfg = std::move(cfg);
  g.pdt = std::move(pdt);
  g.rd = std::move(rd);
  auto alive = [&](int n) { return live.empty() || live[n]; };

  std::set<PdgEdge> edges;
  g.nodes.insert(kEntryLabel);
  for (int u = 0; u < g.cfg.size(); ++u) {
    const CfgNode &node = g.cfg.node(u);
    if (node.part == Part::Entry || node.part == Part::Exit)
      continue;
    g.nodes.insert(node.label);
    if (!alive(u))
      continue;
    for (const std::string &var : node.du.uses)
      for (int d : g.rd.reaching(u, var))
        if (alive(d))
          edges.insert({g.cfg.node(d).label, node.label, DepKind::Data, var,
                        BranchTag::Seq});
  }
  for (const ControlDep &cd : cds) {
    const CfgNode &to = g.cfg.node(cd.node);
    if (to.part == Part::Exit || !alive(cd.node) || !alive(cd.predicate))
      continue;
    Label from = cd.predicate == Cfg::kEntry ? kEntryLabel : g.cfg.node(cd.predicate).label;
    edges.insert({from, to.label, DepKind::Control, "", cd.tag});
  }
  g.edges.assign(edges.begin(), edges.end());
  for (const PdgEdge &e : g.edges) {
    g.preds[e.to].insert(e.from);
    g.succs[e.from].insert(e.to);
  }
  return g;
}

Pdg build_pdg(const Program &p) {
  Cfg cfg = build_cfg(p);
  PostDomTree pdt = postdominators(cfg);
  ReachingDefs rd = reaching_definitions(cfg);
  std::vector<ControlDep> cds = control_dependences(cfg, pdt);
  return assemble_pdg(std::move(cfg), std::move(pdt), std::move(rd), cds);
}

LabelSet backward_reachable(const Pdg &g, const LabelSet &seeds) {
  return reach(g.preds, seeds);
}

LabelSet forward_reachable(const Pdg &g, const LabelSet &seeds) {
  return reach(g.succs, seeds);
}

} // namespace slicekit
