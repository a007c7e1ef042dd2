//===- static_slicer.cpp - PDG-reachability slicing -----------------------===//

#include "slicekit/static_slicer.hpp"

#include <algorithm>

#include "slicekit/error.hpp"
#include "slicekit/transform.hpp"

namespace slicekit {

const char *to_string(Technique t) {
  switch (t) {
  case Technique::Backward:
    return "static";
  case Technique::Forward:
    return "forward";
  case Technique::Dynamic:
    return "dynamic";
  case Technique::Simultaneous:
    return "simultaneous";
  case Technique::Conditioned:
    return "conditioned";
  case Technique::Amorphous:
    return "amorphous";
  }
  return "?";
}

void validate_criterion(const Program &p, Label statement, const VarSet &vars) {
  const Stmt *s = find_stmt(p, statement);
  if (!s)
    throw AnalysisError(AnalysisErrorKind::InvalidCriterion,
                        "no statement with label " + std::to_string(statement.value));
  if (s->is_decl())
    throw AnalysisError(AnalysisErrorKind::InvalidCriterion,
                        "label " + std::to_string(statement.value) +
                            " is a declaration, not an executable statement");
  if (vars.empty())
    throw AnalysisError(AnalysisErrorKind::InvalidCriterion,
                        "criterion needs at least one variable");
  const auto syms = symbols(p);
  for (const std::string &v : vars)
    if (!syms.count(v))
      throw AnalysisError(AnalysisErrorKind::InvalidCriterion,
                          "variable '" + v + "' is not declared");
}

LabelSet complete_slice(const Program &p, LabelSet labels) {
  labels.erase(kEntryLabel);
  for (Label d : decl_labels(p))
    labels.insert(d);
  return close_under_parents(p, std::move(labels));
}

namespace {

bool references(const Stmt &s, const VarSet &vars) {
  const auto hv = header_vars(s);
  return std::any_of(vars.begin(), vars.end(),
                     [&](const std::string &v) { return hv.count(v) > 0; });
}

LabelSet reaching_labels(const Pdg &g, Label statement, const VarSet &vars) {
  LabelSet out;
  const int node = g.cfg.main_node(statement);
  for (const std::string &v : vars)
    for (int d : g.rd.reaching(node, v))
      out.insert(g.cfg.node(d).label);
  return out;
}

} // namespace

Slice backward_slice(const Pdg &g, const Program &p, const StaticCriterion &c) {
  validate_criterion(p, c.statement, c.variables);
  const Stmt &s = *find_stmt(p, c.statement);

  LabelSet seeds = reaching_labels(g, c.statement, c.variables);
  if (references(s, c.variables))
    seeds.insert(c.statement);
  for (Label parent : g.control_parents(c.statement))
    seeds.insert(parent);

  LabelSet labels = backward_reachable(g, seeds);
  labels.insert(c.statement);

  Slice out;
  out.labels = complete_slice(p, std::move(labels));
  out.technique = Technique::Backward;
  out.criterion = c;
  out.projected = project(p, out.labels);
  return out;
}

Slice backward_slice(const Program &p, const StaticCriterion &c) {
  return backward_slice(build_pdg(p), p, c);
}

Slice forward_slice(const Pdg &g, const Program &p, const StaticCriterion &c) {
  validate_criterion(p, c.statement, c.variables);
  const Stmt &s = *find_stmt(p, c.statement);

  LabelSet seeds;
  if (references(s, c.variables)) {
    seeds.insert(c.statement);
  } else {
    const LabelSet decls = decl_labels(p);
    for (Label l : reaching_labels(g, c.statement, c.variables))
      if (!decls.count(l))
        seeds.insert(l);
  }

  LabelSet labels = forward_reachable(g, seeds);
  labels.erase(kEntryLabel);
  for (Label d : decl_labels(p))
    labels.erase(d);

  Slice out;
  out.labels = labels;
  out.technique = Technique::Forward;
  out.criterion = c;
  out.projected = project(p, complete_slice(p, std::move(labels)));
  return out;
}

Slice forward_slice(const Program &p, const StaticCriterion &c) {
  return forward_slice(build_pdg(p), p, c);
}

} // namespace slicekit
