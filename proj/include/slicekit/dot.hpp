//===- dot.hpp - Graphviz export --------------------------------*- C++ -*-===//

#pragma once

#include <string>

#include "slicekit/cfg.hpp"
#include "slicekit/pdg.hpp"

namespace slicekit {

/// Data edges are solid and labeled with the variable; control edges are
/// dashed. Nodes are emitted in label order as "L<label>: <text>".
std::string export_dot(const Pdg &g);

/// CFG nodes in creation order; for-header parts show as L<label>.init<k>
/// and L<label>.update<k>. Branch edges carry their true/false tag.
std::string export_dot(const Cfg &g);

} // namespace slicekit
