//===- project.cpp - Statement-deletion projection ------------------------===//

#include "slicekit/error.hpp"
#include "slicekit/transform.hpp"

namespace slicekit {
namespace {

void project_block(const Block &in, const LabelSet &keep, Block &out) {
  for (const Stmt &s : in) {
    const bool kept = keep.count(s.label) > 0;
    if (const auto *i = std::get_if<IfStmt>(&s.node)) {
      if (!kept) {
        project_block(i->then_block, keep, out);
        project_block(i->else_block, keep, out);
        continue;
      }
      IfStmt ni{i->cond, {}, i->has_else, {}};
      project_block(i->then_block, keep, ni.then_block);
      project_block(i->else_block, keep, ni.else_block);
      if (ni.else_block.empty() && !i->else_block.empty())
        ni.has_else = false;
      out.push_back(Stmt{s.label, s.line, std::move(ni)});
    } else if (const auto *w = std::get_if<WhileStmt>(&s.node)) {
      if (!kept) {
        project_block(w->body, keep, out);
        continue;
      }
      WhileStmt nw{w->cond, {}};
      project_block(w->body, keep, nw.body);
      out.push_back(Stmt{s.label, s.line, std::move(nw)});
    } else if (const auto *f = std::get_if<ForStmt>(&s.node)) {
      if (!kept) {
        project_block(f->body, keep, out);
        continue;
      }
      ForStmt nf{f->init, f->cond, f->update, {}};
      project_block(f->body, keep, nf.body);
      out.push_back(Stmt{s.label, s.line, std::move(nf)});
    } else if (kept) {
      out.push_back(s);
    }
  }
}

} // namespace

Program project(const Program &p, const LabelSet &keep) {
  const LabelSet labels = all_labels(p);
  for (Label l : keep)
    if (!labels.count(l))
      throw AnalysisError(AnalysisErrorKind::UnknownLabel,
                          "unknown label " + std::to_string(l.value));
  Program out;
  out.decls = p.decls;
  out.notes = p.notes;
  project_block(p.body, keep, out.body);
  return out;
}

} // namespace slicekit
