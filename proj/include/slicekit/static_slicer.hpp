//===- static_slicer.hpp - PDG-reachability slicing -------------*- C++ -*-===//

#pragma once

#include "slicekit/pdg.hpp"
#include "slicekit/slice.hpp"

namespace slicekit {

/// Backward slice of ⟨S, V⟩. Seeds: S when it references some v ∈ V, the
/// definitions of V reaching S, and S's control parents (so that its
/// predicates' own dependences are kept). The result is closed under PDG
/// predecessors, always contains S and the declarations, and is closed
/// under enclosing predicates.
Slice backward_slice(const Pdg &g, const Program &p, const StaticCriterion &c);
Slice backward_slice(const Program &p, const StaticCriterion &c);

/// Forward slice of ⟨S, V⟩. Seed is S when it defines or uses some v ∈ V,
/// otherwise the non-declaration definitions of V reaching S. `labels` is
/// the PDG-successor closure (declarations never appear); `projected` keeps
/// the enclosing predicates too so it still parses.
Slice forward_slice(const Pdg &g, const Program &p, const StaticCriterion &c);
Slice forward_slice(const Program &p, const StaticCriterion &c);

} // namespace slicekit
