//===- cohesion.cpp - Slice-based cohesion metrics ------------------------===//

#include "slicekit/cohesion.hpp"

#include <algorithm>
#include <optional>

#include "slicekit/cfg.hpp"
#include "slicekit/error.hpp"
#include "slicekit/static_slicer.hpp"

namespace slicekit {

Label last_reference(const Program &p, const std::string &v) {
  if (!symbols(p).count(v))
    throw AnalysisError(AnalysisErrorKind::InvalidVariable,
                        "output '" + v + "' is not declared");
  std::optional<Label> last;
  bool defined = false;
  const Cfg cfg = build_cfg(p);
  for (const CfgNode &n : cfg.nodes())
    if (n.part != Part::Entry && n.part != Part::Exit && n.du.defs.count(v) &&
        !find_stmt(p, n.label)->is_decl())
      defined = true;
  if (!defined)
    throw AnalysisError(AnalysisErrorKind::NoDefinition,
                        "output '" + v + "' is never assigned");
  for_each_stmt(p.body, [&](const Stmt &s) {
    if (header_vars(s).count(v))
      last = std::max(last.value_or(s.label), s.label);
  });
  return *last;
}

CohesionReport cohesion(const Program &p, const VarSet &outputs) {
  if (outputs.empty())
    throw AnalysisError(AnalysisErrorKind::InvalidVariable,
                        "cohesion needs at least one output variable");
  const Pdg g = build_pdg(p);
  CohesionReport r;
  r.length = static_cast<int>(all_labels(p).size());

  bool first = true;
  for (const std::string &v : outputs) {
    Label at = last_reference(p, v);
    LabelSet sl = backward_slice(g, p, StaticCriterion{at, {v}}).labels;
    r.slice_points[v] = at;
    r.slice_sizes[v] = static_cast<int>(sl.size());
    if (first) {
      r.intersection = sl;
      first = false;
    } else {
      LabelSet keep;
      std::set_intersection(r.intersection.begin(), r.intersection.end(), sl.begin(),
                            sl.end(), std::inserter(keep, keep.end()));
      r.intersection = std::move(keep);
    }
    r.slices[v] = std::move(sl);
  }

  const std::int64_t k = static_cast<std::int64_t>(outputs.size());
  const std::int64_t length = r.length;
  const std::int64_t common = static_cast<std::int64_t>(r.intersection.size());
  r.tightness = Ratio(common, length);
  Ratio coverage, overlap;
  for (const auto &[v, size] : r.slice_sizes) {
    coverage += Ratio(size, length);
    overlap += Ratio(common, size);
  }
  r.coverage = coverage / k;
  r.overlap = overlap / k;
  return r;
}

} // namespace slicekit
