//===- normalize.cpp - MiniJ normalization --------------------------------===//

#include "slicekit/transform.hpp"

namespace slicekit {
namespace {

void relabel_block(Block &b, int &next) {
  for (Stmt &s : b) {
    s.label = Label{next++};
    if (auto *i = std::get_if<IfStmt>(&s.node)) {
      relabel_block(i->then_block, next);
      relabel_block(i->else_block, next);
    } else if (auto *w = std::get_if<WhileStmt>(&s.node)) {
      relabel_block(w->body, next);
    } else if (auto *f = std::get_if<ForStmt>(&s.node)) {
      relabel_block(f->body, next);
    }
  }
}

ExprPtr plus_one(const std::string &v, bool inc) {
  return make_binary(inc ? BinaryOp::Add : BinaryOp::Sub, make_var(v), make_int(1));
}

Assign step_assign(const std::string &v, bool inc) {
  return Assign{{LValue{v, nullptr}}, AssignOp::Set, plus_one(v, inc)};
}

// Replaces in-expression ++/-- by the bare variable, recording the
// increments that must run before (prefix) or after (postfix) the statement.
ExprPtr hoist(const ExprPtr &e, std::vector<Assign> &pre, std::vector<Assign> &post) {
  if (!e)
    return e;
  return std::visit(
      [&](const auto &x) -> ExprPtr {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, IndexRef>) {
          ExprPtr idx = hoist(x.index, pre, post);
          return idx == x.index ? e : make_index(x.array, idx);
        } else if constexpr (std::is_same_v<T, UnaryExpr>) {
          if (x.op == UnaryOp::Neg || x.op == UnaryOp::Not) {
            ExprPtr o = hoist(x.operand, pre, post);
            return o == x.operand ? e : make_unary(x.op, o);
          }
          const std::string &v = std::get<VarRef>(x.operand->node).name;
          switch (x.op) {
          case UnaryOp::PreInc: pre.push_back(step_assign(v, true)); break;
          case UnaryOp::PreDec: pre.push_back(step_assign(v, false)); break;
          case UnaryOp::PostInc: post.push_back(step_assign(v, true)); break;
          default: post.push_back(step_assign(v, false)); break;
          }
          return x.operand;
        } else if constexpr (std::is_same_v<T, BinaryExpr>) {
          ExprPtr l = hoist(x.lhs, pre, post);
          ExprPtr r = hoist(x.rhs, pre, post);
          return (l == x.lhs && r == x.rhs) ? e : make_binary(x.op, l, r);
        } else {
          return e;
        }
      },
      e->node);
}

LValue hoist_lvalue(const LValue &lv, std::vector<Assign> &pre, std::vector<Assign> &post) {
  return LValue{lv.name, hoist(lv.index, pre, post)};
}

ExprPtr lvalue_expr(const LValue &lv) {
  return lv.index ? make_index(lv.name, lv.index) : make_var(lv.name);
}

std::vector<Assign> expand_assign(const Assign &a) {
  std::vector<Assign> pre, post;
  std::vector<LValue> targets;
  for (const LValue &t : a.targets)
    targets.push_back(hoist_lvalue(t, pre, post));
  ExprPtr value = hoist(a.value, pre, post);

  std::vector<Assign> out = pre;
  const LValue &last = targets.back();
  auto compound = [&](BinaryOp op, ExprPtr rhs) {
    return make_binary(op, lvalue_expr(last), std::move(rhs));
  };
  switch (a.op) {
  case AssignOp::Set: break;
  case AssignOp::Add: value = compound(BinaryOp::Add, value); break;
  case AssignOp::Sub: value = compound(BinaryOp::Sub, value); break;
  case AssignOp::Mul: value = compound(BinaryOp::Mul, value); break;
  case AssignOp::Div: value = compound(BinaryOp::Div, value); break;
  case AssignOp::Inc: value = compound(BinaryOp::Add, make_int(1)); break;
  case AssignOp::Dec: value = compound(BinaryOp::Sub, make_int(1)); break;
  }

  const bool literal = std::holds_alternative<IntLit>(value->node);
  for (std::size_t k = targets.size(); k-- > 0;) {
    ExprPtr rhs = (k + 1 == targets.size() || literal) ? value
                                                       : lvalue_expr(targets[k + 1]);
    out.push_back(Assign{{targets[k]}, AssignOp::Set, rhs});
  }
  out.insert(out.end(), post.begin(), post.end());
  return out;
}

std::vector<Assign> expand_list(const std::vector<Assign> &list) {
  std::vector<Assign> out;
  for (const Assign &a : list) {
    std::vector<Assign> parts = expand_assign(a);
    out.insert(out.end(), parts.begin(), parts.end());
  }
  return out;
}

Stmt simple(int line, StmtNode node) {
  Stmt s;
  s.line = line;
  s.node = std::move(node);
  return s;
}

Block normalize_block(const Block &b) {
  Block out;
  for (const Stmt &s : b) {
    std::visit(
        [&](const auto &x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, Assign>) {
            for (Assign &a : expand_assign(x))
              out.push_back(simple(s.line, std::move(a)));
          } else if constexpr (std::is_same_v<T, ReadStmt>) {
            std::vector<Assign> pre, post;
            LValue t = hoist_lvalue(x.target, pre, post);
            for (Assign &a : pre)
              out.push_back(simple(s.line, std::move(a)));
            out.push_back(simple(s.line, ReadStmt{t}));
            for (Assign &a : post)
              out.push_back(simple(s.line, std::move(a)));
          } else if constexpr (std::is_same_v<T, PrintStmt>) {
            std::vector<Assign> pre, post;
            ExprPtr v = hoist(x.value, pre, post);
            for (Assign &a : pre)
              out.push_back(simple(s.line, std::move(a)));
            out.push_back(simple(s.line, PrintStmt{v}));
            for (Assign &a : post)
              out.push_back(simple(s.line, std::move(a)));
          } else if constexpr (std::is_same_v<T, IfStmt>) {
            IfStmt i = x;
            i.then_block = normalize_block(x.then_block);
            i.else_block = normalize_block(x.else_block);
            out.push_back(simple(s.line, std::move(i)));
          } else if constexpr (std::is_same_v<T, WhileStmt>) {
            out.push_back(simple(s.line, WhileStmt{x.cond, normalize_block(x.body)}));
          } else if constexpr (std::is_same_v<T, ForStmt>) {
            out.push_back(simple(s.line, ForStmt{expand_list(x.init), x.cond,
                                                 expand_list(x.update),
                                                 normalize_block(x.body)}));
          } else {
            out.push_back(s);
          }
        },
        s.node);
  }
  return out;
}

} // namespace

void relabel(Program &p) {
  int next = 1;
  relabel_block(p.decls, next);
  relabel_block(p.body, next);
}

Program normalize(const Program &p) {
  Program out;
  out.decls = p.decls;
  out.notes = p.notes;
  out.body = normalize_block(p.body);
  relabel(out);
  return out;
}

} // namespace slicekit
