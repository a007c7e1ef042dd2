//===- ast.cpp - MiniJ AST helpers ----------------------------------------===//

#include "slicekit/ast.hpp"

#include <algorithm>

namespace slicekit {

ExprPtr make_int(std::int64_t v) { return std::make_shared<Expr>(Expr{IntLit{v}}); }

ExprPtr make_var(std::string name) {
  return std::make_shared<Expr>(Expr{VarRef{std::move(name)}});
}

ExprPtr make_index(std::string array, ExprPtr index) {
  return std::make_shared<Expr>(Expr{IndexRef{std::move(array), std::move(index)}});
}

ExprPtr make_unary(UnaryOp op, ExprPtr operand) {
  return std::make_shared<Expr>(Expr{UnaryExpr{op, std::move(operand)}});
}

ExprPtr make_binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs) {
  return std::make_shared<Expr>(Expr{BinaryExpr{op, std::move(lhs), std::move(rhs)}});
}

bool same_expr(const ExprPtr &a, const ExprPtr &b) {
  if (a == b)
    return true;
  if (!a || !b || a->node.index() != b->node.index())
    return false;
  return std::visit(
      [&](const auto &x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const auto &y = std::get<T>(b->node);
        if constexpr (std::is_same_v<T, IntLit>)
          return x.value == y.value;
        else if constexpr (std::is_same_v<T, VarRef>)
          return x.name == y.name;
        else if constexpr (std::is_same_v<T, IndexRef>)
          return x.array == y.array && same_expr(x.index, y.index);
        else if constexpr (std::is_same_v<T, UnaryExpr>)
          return x.op == y.op && same_expr(x.operand, y.operand);
        else
          return x.op == y.op && same_expr(x.lhs, y.lhs) && same_expr(x.rhs, y.rhs);
      },
      a->node);
}

bool operator==(const LValue &a, const LValue &b) {
  return a.name == b.name && same_expr(a.index, b.index);
}

bool operator==(const Assign &a, const Assign &b) {
  return a.targets == b.targets && a.op == b.op && same_expr(a.value, b.value);
}

namespace {

bool same_node(const StmtNode &a, const StmtNode &b) {
  if (a.index() != b.index())
    return false;
  return std::visit(
      [&](const auto &x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const auto &y = std::get<T>(b);
        if constexpr (std::is_same_v<T, DeclStmt>) {
          if (x.vars.size() != y.vars.size())
            return false;
          for (std::size_t i = 0; i < x.vars.size(); ++i)
            if (x.vars[i].name != y.vars[i].name || x.vars[i].size != y.vars[i].size)
              return false;
          return true;
        } else if constexpr (std::is_same_v<T, Assign>) {
          return x == y;
        } else if constexpr (std::is_same_v<T, ReadStmt>) {
          return x.target == y.target;
        } else if constexpr (std::is_same_v<T, PrintStmt>) {
          return same_expr(x.value, y.value);
        } else if constexpr (std::is_same_v<T, IfStmt>) {
          return same_expr(x.cond, y.cond) && x.then_block == y.then_block &&
                 x.has_else == y.has_else && x.else_block == y.else_block;
        } else if constexpr (std::is_same_v<T, WhileStmt>) {
          return same_expr(x.cond, y.cond) && x.body == y.body;
        } else {
          return x.init == y.init && same_expr(x.cond, y.cond) &&
                 x.update == y.update && x.body == y.body;
        }
      },
      a);
}

void build_parents(const Block &b, std::optional<Label> parent,
                   std::map<Label, Label> &out) {
  for (const Stmt &s : b) {
    if (parent)
      out[s.label] = *parent;
    if (const auto *i = std::get_if<IfStmt>(&s.node)) {
      build_parents(i->then_block, s.label, out);
      build_parents(i->else_block, s.label, out);
    } else if (const auto *w = std::get_if<WhileStmt>(&s.node)) {
      build_parents(w->body, s.label, out);
    } else if (const auto *f = std::get_if<ForStmt>(&s.node)) {
      build_parents(f->body, s.label, out);
    }
  }
}

void lvalue_vars(const LValue &lv, std::set<std::string> &out) {
  out.insert(lv.name);
  collect_vars(lv.index, out);
}

void assign_vars(const Assign &a, std::set<std::string> &out) {
  for (const LValue &t : a.targets)
    lvalue_vars(t, out);
  collect_vars(a.value, out);
}

} // namespace

bool operator==(const Stmt &a, const Stmt &b) {
  return a.label == b.label && same_node(a.node, b.node);
}

std::map<std::string, VarInfo> symbols(const Program &p) {
  std::map<std::string, VarInfo> out;
  for (const Stmt &s : p.decls)
    for (const Declarator &d : std::get<DeclStmt>(s.node).vars)
      out[d.name] = VarInfo{d.size.has_value(), d.size.value_or(0), s.label};
  return out;
}

const Stmt *find_stmt(const Program &p, Label l) {
  const Stmt *found = nullptr;
  for_each_stmt(p, [&](const Stmt &s) {
    if (s.label == l)
      found = &s;
  });
  return found;
}

LabelSet all_labels(const Program &p) {
  LabelSet out;
  for_each_stmt(p, [&](const Stmt &s) { out.insert(s.label); });
  return out;
}

LabelSet decl_labels(const Program &p) {
  LabelSet out;
  for (const Stmt &s : p.decls)
    out.insert(s.label);
  return out;
}

Label max_label(const Program &p) {
  Label m{0};
  for_each_stmt(p, [&](const Stmt &s) { m = std::max(m, s.label); });
  return m;
}

std::map<Label, Label> parent_map(const Program &p) {
  std::map<Label, Label> out;
  build_parents(p.body, std::nullopt, out);
  return out;
}

LabelSet close_under_parents(const Program &p, LabelSet labels) {
  const auto parents = parent_map(p);
  std::vector<Label> work(labels.begin(), labels.end());
  while (!work.empty()) {
    Label l = work.back();
    work.pop_back();
    auto it = parents.find(l);
    if (it != parents.end() && labels.insert(it->second).second)
      work.push_back(it->second);
  }
  return labels;
}

bool is_top_level(const Program &p, Label l) {
  return std::any_of(p.body.begin(), p.body.end(),
                     [&](const Stmt &s) { return s.label == l; });
}

void collect_vars(const ExprPtr &e, std::set<std::string> &out) {
  if (!e)
    return;
  std::visit(
      [&](const auto &x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, VarRef>) {
          out.insert(x.name);
        } else if constexpr (std::is_same_v<T, IndexRef>) {
          out.insert(x.array);
          collect_vars(x.index, out);
        } else if constexpr (std::is_same_v<T, UnaryExpr>) {
          collect_vars(x.operand, out);
        } else if constexpr (std::is_same_v<T, BinaryExpr>) {
          collect_vars(x.lhs, out);
          collect_vars(x.rhs, out);
        }
      },
      e->node);
}

std::set<std::string> expr_vars(const ExprPtr &e) {
  std::set<std::string> out;
  collect_vars(e, out);
  return out;
}

std::set<std::string> header_vars(const Stmt &s) {
  std::set<std::string> out;
  std::visit(
      [&](const auto &x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, DeclStmt>) {
          for (const Declarator &d : x.vars)
            out.insert(d.name);
        } else if constexpr (std::is_same_v<T, Assign>) {
          assign_vars(x, out);
        } else if constexpr (std::is_same_v<T, ReadStmt>) {
          lvalue_vars(x.target, out);
        } else if constexpr (std::is_same_v<T, PrintStmt>) {
          collect_vars(x.value, out);
        } else if constexpr (std::is_same_v<T, ForStmt>) {
          for (const Assign &a : x.init)
            assign_vars(a, out);
          collect_vars(x.cond, out);
          for (const Assign &a : x.update)
            assign_vars(a, out);
        } else {
          collect_vars(x.cond, out);
        }
      },
      s.node);
  return out;
}

int statement_count(const Program &p) {
  int n = 0;
  for_each_stmt(p, [&](const Stmt &s) {
    ++n;
    if (const auto *f = std::get_if<ForStmt>(&s.node))
      n += static_cast<int>(f->init.size() + f->update.size());
  });
  return n;
}

} // namespace slicekit
