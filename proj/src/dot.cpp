//===- dot.cpp - Graphviz export ------------------------------------------===//

#include "slicekit/dot.hpp"

#include <sstream>

namespace slicekit {

namespace {

std::string quote(const std::string &s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\')
      out += '\\';
    out += c;
  }
  return out + '"';
}

std::string node_id(Label l) { return "n" + std::to_string(l.value); }

std::string cfg_caption(const CfgNode &n) {
  switch (n.part) {
  case Part::Entry:
  case Part::Exit:
    return n.text;
  case Part::Main:
    return "L" + std::to_string(n.label.value) + ": " + n.text;
  default:
    return "L" + std::to_string(n.label.value) + "." + to_string(n.part) +
           std::to_string(n.index) + ": " + n.text;
  }
}

} // namespace

std::string export_dot(const Pdg &g) {
  std::ostringstream os;
  os << "digraph pdg {\n  node [shape=box];\n";
  for (Label l : g.nodes) {
    std::string caption =
        l.is_entry() ? "Entry" : "L" + std::to_string(l.value) + ": " + g.text(l);
    os << "  " << node_id(l) << " [label=" << quote(caption) << "];\n";
  }
  for (const PdgEdge &e : g.edges) {
    os << "  " << node_id(e.from) << " -> " << node_id(e.to);
    if (e.kind == DepKind::Data)
      os << " [style=solid, label=" << quote(e.var) << "];\n";
    else if (e.tag == BranchTag::Seq)
      os << " [style=dashed];\n";
    else
      os << " [style=dashed, label=" << quote(to_string(e.tag)) << "];\n";
  }
  os << "}\n";
  return os.str();
}

std::string export_dot(const Cfg &g) {
  std::ostringstream os;
  os << "digraph cfg {\n  node [shape=box];\n";
  for (int n = 0; n < g.size(); ++n)
    os << "  c" << n << " [label=" << quote(cfg_caption(g.node(n))) << "];\n";
  for (const CfgEdge &e : g.edges()) {
    os << "  c" << e.from << " -> c" << e.to;
    if (e.tag != BranchTag::Seq)
      os << " [label=" << quote(to_string(e.tag)) << "]";
    os << ";\n";
  }
  os << "}\n";
  return os.str();
}

} // namespace slicekit
