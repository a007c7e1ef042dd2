//===- printer.cpp - MiniJ unparser ---------------------------------------===//

#include "slicekit/printer.hpp"

#include <sstream>

namespace slicekit {
namespace {

constexpr int kUnaryPrec = 6;
constexpr int kPrimaryPrec = 7;

int precedence(BinaryOp op) {
  switch (op) {
  case BinaryOp::Or: return 0;
  case BinaryOp::And: return 1;
  case BinaryOp::Eq:
  case BinaryOp::Ne: return 2;
  case BinaryOp::Lt:
  case BinaryOp::Le:
  case BinaryOp::Gt:
  case BinaryOp::Ge: return 3;
  case BinaryOp::Add:
  case BinaryOp::Sub: return 4;
  default: return 5;
  }
}

const char *spelling(BinaryOp op) {
  switch (op) {
  case BinaryOp::Add: return "+";
  case BinaryOp::Sub: return "-";
  case BinaryOp::Mul: return "*";
  case BinaryOp::Div: return "/";
  case BinaryOp::Mod: return "mod";
  case BinaryOp::Lt: return "<";
  case BinaryOp::Le: return "<=";
  case BinaryOp::Gt: return ">";
  case BinaryOp::Ge: return ">=";
  case BinaryOp::Eq: return "==";
  case BinaryOp::Ne: return "!=";
  case BinaryOp::And: return "&&";
  case BinaryOp::Or: return "||";
  }
  return "?";
}

int precedence(const ExprPtr &e) {
  if (const auto *b = std::get_if<BinaryExpr>(&e->node))
    return precedence(b->op);
  if (std::holds_alternative<UnaryExpr>(e->node))
    return kUnaryPrec;
  return kPrimaryPrec;
}

std::string wrap(const ExprPtr &e, bool parens) {
  std::string s = expr_text(e);
  return parens ? "(" + s + ")" : s;
}

std::string lvalue_text(const LValue &lv) {
  return lv.index ? lv.name + "[" + expr_text(lv.index) + "]" : lv.name;
}

std::string assign_op_text(AssignOp op) {
  switch (op) {
  case AssignOp::Add: return " += ";
  case AssignOp::Sub: return " -= ";
  case AssignOp::Mul: return " *= ";
  case AssignOp::Div: return " /= ";
  default: return " = ";
  }
}

std::string assign_list_text(const std::vector<Assign> &list) {
  std::string out;
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (i)
      out += ", ";
    out += assign_text(list[i]);
  }
  return out;
}

class Printer {
public:
  explicit Printer(const UnparseOptions &opts) : opts_(opts) {}

  std::string run(const Program &p) {
    for (const Stmt &s : p.decls)
      stmt(s, 0);
    for (const Stmt &s : p.body)
      stmt(s, 0);
    return out_.str();
  }

private:
  void indent(int depth) {
    for (int i = 0; i < depth; ++i)
      out_ << "  ";
  }

  void tag(const Stmt &s) {
    if (opts_.show_labels)
      out_ << "  // (" << s.label.value << ")";
  }

  void stmt(const Stmt &s, int depth) {
    indent(depth);
    if (const auto *i = std::get_if<IfStmt>(&s.node)) {
      if_chain(s, *i, depth);
      out_ << "\n";
    } else if (const auto *w = std::get_if<WhileStmt>(&s.node)) {
      out_ << statement_text(s) << " ";
      braced(s, w->body, depth);
      out_ << "\n";
    } else if (const auto *f = std::get_if<ForStmt>(&s.node)) {
      out_ << statement_text(s) << " ";
      braced(s, f->body, depth);
      out_ << "\n";
    } else {
      out_ << statement_text(s);
      tag(s);
      out_ << "\n";
    }
  }

  void if_chain(const Stmt &s, const IfStmt &i, int depth) {
    out_ << statement_text(s) << " ";
    braced(s, i.then_block, depth);
    if (!i.has_else)
      return;
    out_ << " else ";
    if (i.else_block.size() == 1 && std::holds_alternative<IfStmt>(i.else_block[0].node)) {
      const Stmt &nested = i.else_block[0];
      if_chain(nested, std::get<IfStmt>(nested.node), depth);
      return;
    }
    braced(nullptr, i.else_block, depth);
  }

  void braced(const Stmt &owner, const Block &b, int depth) { braced(&owner, b, depth); }

  void braced(const Stmt *owner, const Block &b, int depth) {
    if (b.empty()) {
      out_ << "{ }";
      if (owner)
        tag(*owner);
      return;
    }
    out_ << "{";
    if (owner)
      tag(*owner);
    out_ << "\n";
    for (const Stmt &s : b)
      stmt(s, depth + 1);
    indent(depth);
    out_ << "}";
  }

  const UnparseOptions &opts_;
  std::ostringstream out_;
};

} // namespace

std::string expr_text(const ExprPtr &e) {
  return std::visit(
      [&](const auto &x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, IntLit>) {
          return std::to_string(x.value);
        } else if constexpr (std::is_same_v<T, VarRef>) {
          return x.name;
        } else if constexpr (std::is_same_v<T, IndexRef>) {
          return x.array + "[" + expr_text(x.index) + "]";
        } else if constexpr (std::is_same_v<T, UnaryExpr>) {
          switch (x.op) {
          case UnaryOp::PreInc: return "++" + expr_text(x.operand);
          case UnaryOp::PreDec: return "--" + expr_text(x.operand);
          case UnaryOp::PostInc: return expr_text(x.operand) + "++";
          case UnaryOp::PostDec: return expr_text(x.operand) + "--";
          default: break;
          }
          std::string inner = expr_text(x.operand);
          bool parens = precedence(x.operand) < kUnaryPrec ||
                        (!inner.empty() && (inner[0] == '-' || inner[0] == '!'));
          return (x.op == UnaryOp::Neg ? "-" : "!") + (parens ? "(" + inner + ")" : inner);
        } else {
          const int p = precedence(x.op);
          return wrap(x.lhs, precedence(x.lhs) < p) + " " + spelling(x.op) + " " +
                 wrap(x.rhs, precedence(x.rhs) <= p);
        }
      },
      e->node);
}

std::string assign_text(const Assign &a) {
  if (a.op == AssignOp::Inc)
    return lvalue_text(a.target()) + "++";
  if (a.op == AssignOp::Dec)
    return lvalue_text(a.target()) + "--";
  std::string out;
  for (std::size_t i = 0; i < a.targets.size(); ++i)
    out += lvalue_text(a.targets[i]) + (i + 1 == a.targets.size() ? assign_op_text(a.op) : " = ");
  return out + expr_text(a.value);
}

std::string statement_text(const Stmt &s) {
  return std::visit(
      [&](const auto &x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, DeclStmt>) {
          std::string out = "int ";
          for (std::size_t i = 0; i < x.vars.size(); ++i) {
            if (i)
              out += ", ";
            out += x.vars[i].name;
            if (x.vars[i].size)
              out += "[" + std::to_string(*x.vars[i].size) + "]";
          }
          return out + ";";
        } else if constexpr (std::is_same_v<T, Assign>) {
          return assign_text(x) + ";";
        } else if constexpr (std::is_same_v<T, ReadStmt>) {
          return lvalue_text(x.target) + " = read();";
        } else if constexpr (std::is_same_v<T, PrintStmt>) {
          return "print(" + expr_text(x.value) + ");";
        } else if constexpr (std::is_same_v<T, IfStmt>) {
          return "if (" + expr_text(x.cond) + ")";
        } else if constexpr (std::is_same_v<T, WhileStmt>) {
          return "while (" + expr_text(x.cond) + ")";
        } else {
          return "for (" + assign_list_text(x.init) + "; " + expr_text(x.cond) + "; " +
                 assign_list_text(x.update) + ")";
        }
      },
      s.node);
}

std::string unparse(const Program &p, const UnparseOptions &opts) {
  return Printer(opts).run(p);
}

} // namespace slicekit
