//===- dynamic_slicer.cpp - Dynamic and simultaneous slicing --------------===//

#include "slicekit/dynamic_slicer.hpp"

#include <algorithm>

#include "slicekit/static_slicer.hpp"
#include "slicekit/transform.hpp"

namespace slicekit {

std::set<int> dynamic_closure(const Trace &t, std::set<int> seeds) {
  std::vector<int> work(seeds.begin(), seeds.end());
  auto push = [&](int s) {
    if (s >= 0 && seeds.insert(s).second)
      work.push_back(s);
  };
  while (!work.empty()) {
    const Step &st = t.steps[work.back()];
    work.pop_back();
    for (const CellUse &u : st.uses)
      push(u.def_step);
    push(st.control_parent);
  }
  return seeds;
}

std::set<int> dynamic_seeds(const Trace &t, int at, const VarSet &vars, bool referenced) {
  std::set<int> seeds;
  if (referenced) {
    seeds.insert(at);
  } else {
    std::map<Cell, int> last;
    for (int i = 0; i < at; ++i)
      for (const Cell &c : t.steps[i].defs)
        if (vars.count(c.var))
          last[c] = i;
    for (const auto &[cell, step] : last)
      seeds.insert(step);
  }
  if (t.steps[at].control_parent >= 0)
    seeds.insert(t.steps[at].control_parent);
  return seeds;
}

LabelSet step_labels(const Trace &t, const std::set<int> &steps) {
  LabelSet out;
  for (int s : steps)
    out.insert(t.steps[s].label);
  return out;
}

namespace {

bool references(const Program &p, Label l, const VarSet &vars) {
  const auto hv = header_vars(*find_stmt(p, l));
  return std::any_of(vars.begin(), vars.end(),
                     [&](const std::string &v) { return hv.count(v) > 0; });
}

ExecOptions recording(std::int64_t step_limit) {
  ExecOptions o;
  o.step_limit = step_limit;
  return o;
}

} // namespace

Slice dynamic_slice(const Program &p, const DynamicCriterion &c,
                    std::int64_t step_limit) {
  validate_criterion(p, c.occurrence.statement, c.variables);
  if (c.occurrence.index < 1)
    throw AnalysisError(AnalysisErrorKind::InvalidCriterion,
                        "occurrence index must be at least 1");
  Trace t = try_execute(p, c.input, recording(step_limit));
  const int at = t.find(c.occurrence.statement, c.occurrence.index);
  if (at < 0) {
    if (t.fault)
      throw *t.fault;
    throw AnalysisError(AnalysisErrorKind::OccurrenceNotFound,
                        "statement " + std::to_string(c.occurrence.statement.value) +
                            " executes " +
                            std::to_string(t.count(c.occurrence.statement)) +
                            " time(s); occurrence " +
                            std::to_string(c.occurrence.index) + " does not exist");
  }
  const bool referenced = references(p, c.occurrence.statement, c.variables);
  LabelSet labels =
      step_labels(t, dynamic_closure(t, dynamic_seeds(t, at, c.variables, referenced)));
  labels.insert(c.occurrence.statement);

  Slice out;
  out.labels = complete_slice(p, std::move(labels));
  out.technique = Technique::Dynamic;
  out.criterion = c;
  out.projected = project(p, out.labels);
  out.exhausted_reads = t.exhausted_reads;
  return out;
}

Slice simultaneous_dynamic_slice(const Program &p, const SimultaneousCriterion &c,
                                 std::int64_t step_limit) {
  validate_criterion(p, c.statement, c.variables);
  if (c.inputs.empty())
    throw AnalysisError(AnalysisErrorKind::InvalidCriterion,
                        "simultaneous slicing needs at least one input");

  ExecOptions opts = recording(step_limit);
  opts.watch[c.statement] = c.variables;
  std::vector<Trace> traces;
  int exhausted = 0;
  for (std::size_t k = 0; k < c.inputs.size(); ++k) {
    Trace t = execute(p, c.inputs[k], opts);
    if (t.count(c.statement) == 0)
      throw AnalysisError(AnalysisErrorKind::StatementNeverExecuted,
                          "statement " + std::to_string(c.statement.value) +
                              " never executes on input " + std::to_string(k + 1));
    exhausted += t.exhausted_reads;
    traces.push_back(std::move(t));
  }

  const bool referenced = references(p, c.statement, c.variables);
  LabelSet labels;
  for (const Trace &t : traces) {
    const int at = t.find(c.statement, t.count(c.statement));
    labels.merge(step_labels(t, dynamic_closure(t, dynamic_seeds(t, at, c.variables,
                                                                 referenced))));
  }
  labels.insert(c.statement);
  labels = complete_slice(p, std::move(labels));

  // Grow to a fixpoint. An unreferenced criterion statement is in the slice
  // nominally: every occurrence seeds the last writers of V and the
  // governing predicate, not the statement's own uses.
  for (;;) {
    LabelSet next = labels;
    for (const Trace &t : traces) {
      std::set<int> seeds;
      for (int i = 0; i < static_cast<int>(t.steps.size()); ++i) {
        const Step &st = t.steps[i];
        if (!labels.count(st.label))
          continue;
        if (st.label == c.statement && !referenced) {
          if (st.part == Part::Main)
            seeds.merge(dynamic_seeds(t, i, c.variables, false));
          else if (st.control_parent >= 0)
            seeds.insert(st.control_parent);
        } else {
          seeds.insert(i);
        }
      }
      next.merge(step_labels(t, dynamic_closure(t, std::move(seeds))));
    }
    next = complete_slice(p, std::move(next));
    if (next == labels)
      break;
    labels = std::move(next);
  }

  Slice out;
  out.technique = Technique::Simultaneous;
  out.criterion = c;
  out.exhausted_reads = exhausted;
  out.labels = labels;
  out.projected = project(p, labels);

  ExecOptions check;
  check.step_limit = step_limit;
  check.record = false;
  check.watch = opts.watch;
  for (std::size_t k = 0; k < c.inputs.size(); ++k) {
    Trace got = try_execute(out.projected, c.inputs[k], check);
    if (!observations_agree(traces[k], got)) {
      Slice fallback = backward_slice(p, StaticCriterion{c.statement, c.variables});
      out.labels = std::move(fallback.labels);
      out.projected = std::move(fallback.projected);
      out.fell_back = true;
      out.notes.push_back("projection disagreed with the original on input " +
                          std::to_string(k + 1) + "; returned the static slice");
      break;
    }
  }
  return out;
}

} // namespace slicekit
