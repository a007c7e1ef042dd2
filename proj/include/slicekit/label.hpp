//===- label.hpp - Statement labels -----------------------------*- C++ -*-===//

#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <ostream>
#include <set>

namespace slicekit {

/// Identifies one labeled statement or predicate of a Program. Parsed
/// programs number their statements 1..N in source order; label 0 is reserved
/// for the synthetic Entry node of dependence graphs.
struct Label {
  int value = 0;

  constexpr Label() = default;
  constexpr explicit Label(int v) : value(v) {}

  constexpr bool is_entry() const { return value == 0; }
  friend constexpr auto operator<=>(Label, Label) = default;
  friend std::ostream &operator<<(std::ostream &os, Label l) {
    return l.is_entry() ? os << "Entry" : os << l.value;
  }
};

inline constexpr Label kEntryLabel{0};

using LabelSet = std::set<Label>;

} // namespace slicekit

template <> struct std::hash<slicekit::Label> {
  std::size_t operator()(slicekit::Label l) const noexcept {
    return std::hash<int>{}(l.value);
  }
};
