//===- cohesion.hpp - Slice-based cohesion metrics --------------*- C++ -*-===//

#pragma once

#include <cstdint>
#include <map>
#include <string>

#include <boost/rational.hpp>

#include "slicekit/slice.hpp"

namespace slicekit {

using Ratio = boost::rational<std::int64_t>;

struct CohesionReport {
  int length = 0; // every labeled statement, declarations included
  std::map<std::string, Label> slice_points;
  std::map<std::string, LabelSet> slices;
  std::map<std::string, int> slice_sizes;
  LabelSet intersection;
  Ratio tightness;
  Ratio coverage;
  Ratio overlap;
};

/// Last statement (in label order) whose header mentions `v`, skipping
/// declarations. Throws NoDefinition when no executable statement defines
/// `v`, InvalidVariable when `v` is not declared.
Label last_reference(const Program &p, const std::string &v);

/// tightness = |∩SL| / |L|, coverage = mean |SL_v| / |L|,
/// overlap = mean |∩SL| / |SL_v|, where SL_v is the backward slice on {v}
/// at last_reference(v).
CohesionReport cohesion(const Program &p, const VarSet &outputs);

} // namespace slicekit
