//===- ast.hpp - MiniJ abstract syntax tree ---------------------*- C++ -*-===//
//
// MiniJ is a tiny integer-only imperative language: scalar and array
// declarations, assignments, read()/print(), if/else, while and for. Every
// executable statement and predicate carries a Label; declarations are
// labeled too.
//
// Expressions are immutable trees shared through shared_ptr<const Expr>, so
// copying a Program is cheap and rewrites build new spines only.
//
//===----------------------------------------------------------------------===//

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "slicekit/label.hpp"

namespace slicekit {

enum class BinaryOp { Add, Sub, Mul, Div, Mod, Lt, Le, Gt, Ge, Eq, Ne, And, Or };
enum class UnaryOp { Neg, Not, PreInc, PreDec, PostInc, PostDec };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct IntLit {
  std::int64_t value;
};
struct VarRef {
  std::string name;
};
struct IndexRef {
  std::string array;
  ExprPtr index;
};
struct UnaryExpr {
  UnaryOp op;
  ExprPtr operand;
};
struct BinaryExpr {
  BinaryOp op;
  ExprPtr lhs;
  ExprPtr rhs;
};

struct Expr {
  std::variant<IntLit, VarRef, IndexRef, UnaryExpr, BinaryExpr> node;
};

ExprPtr make_int(std::int64_t v);
ExprPtr make_var(std::string name);
ExprPtr make_index(std::string array, ExprPtr index);
ExprPtr make_unary(UnaryOp op, ExprPtr operand);
ExprPtr make_binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs);

/// Deep structural equality (null == null).
bool same_expr(const ExprPtr &a, const ExprPtr &b);

/// Scalar variable or array element target. `index` is null for scalars.
struct LValue {
  std::string name;
  ExprPtr index;

  bool is_element() const { return index != nullptr; }
};

bool operator==(const LValue &a, const LValue &b);

enum class AssignOp { Set, Add, Sub, Mul, Div, Inc, Dec };

/// `targets` holds more than one entry only for un-normalized chained
/// assignments (`i = j = 1`); `value` is null for `++`/`--`.
struct Assign {
  std::vector<LValue> targets;
  AssignOp op = AssignOp::Set;
  ExprPtr value;

  const LValue &target() const { return targets.front(); }
};

bool operator==(const Assign &a, const Assign &b);

struct Stmt;
using Block = std::vector<Stmt>;

struct Declarator {
  std::string name;
  std::optional<int> size; // set for arrays
};

struct DeclStmt {
  std::vector<Declarator> vars;
};
struct ReadStmt {
  LValue target;
};
struct PrintStmt {
  ExprPtr value;
};
struct IfStmt {
  ExprPtr cond;
  Block then_block;
  bool has_else = false;
  Block else_block;
};
struct WhileStmt {
  ExprPtr cond;
  Block body;
};
struct ForStmt {
  std::vector<Assign> init;
  ExprPtr cond;
  std::vector<Assign> update;
  Block body;
};

using StmtNode =
    std::variant<DeclStmt, Assign, ReadStmt, PrintStmt, IfStmt, WhileStmt, ForStmt>;

struct Stmt {
  Label label;
  int line = 0;
  StmtNode node;

  bool is_decl() const { return std::holds_alternative<DeclStmt>(node); }
  bool is_predicate() const {
    return std::holds_alternative<IfStmt>(node) ||
           std::holds_alternative<WhileStmt>(node) ||
           std::holds_alternative<ForStmt>(node);
  }
};

/// Structural equality including labels, ignoring source lines.
bool operator==(const Stmt &a, const Stmt &b);

struct Program {
  std::vector<Stmt> decls; // every element holds a DeclStmt
  Block body;
  std::vector<std::string> notes; // `//@note` pragmas from the source

  friend bool operator==(const Program &a, const Program &b) {
    return a.decls == b.decls && a.body == b.body;
  }
};

struct VarInfo {
  bool is_array = false;
  int size = 0;
  Label decl;
};

std::map<std::string, VarInfo> symbols(const Program &p);

/// Pre-order walk over every statement (declarations first).
template <typename F> void for_each_stmt(const Block &b, F &&f) {
  for (const Stmt &s : b) {
    f(s);
    if (const auto *i = std::get_if<IfStmt>(&s.node)) {
      for_each_stmt(i->then_block, f);
      for_each_stmt(i->else_block, f);
    } else if (const auto *w = std::get_if<WhileStmt>(&s.node)) {
      for_each_stmt(w->body, f);
    } else if (const auto *fs = std::get_if<ForStmt>(&s.node)) {
      for_each_stmt(fs->body, f);
    }
  }
}

template <typename F> void for_each_stmt(const Program &p, F &&f) {
  for_each_stmt(p.decls, f);
  for_each_stmt(p.body, f);
}

const Stmt *find_stmt(const Program &p, Label l);
LabelSet all_labels(const Program &p);
LabelSet decl_labels(const Program &p);
Label max_label(const Program &p);

/// Label -> label of the innermost enclosing predicate. Top-level statements
/// (and declarations) are absent from the map.
std::map<Label, Label> parent_map(const Program &p);

/// Adds every enclosing predicate of every member.
LabelSet close_under_parents(const Program &p, LabelSet labels);

/// True when `l` sits directly in the top-level statement list.
bool is_top_level(const Program &p, Label l);

void collect_vars(const ExprPtr &e, std::set<std::string> &out);
std::set<std::string> expr_vars(const ExprPtr &e);

/// Variables mentioned by the statement's own header (assignment targets and
/// operands, predicate, declared names); nested blocks are not visited.
std::set<std::string> header_vars(const Stmt &s);

/// Atomic statement count: labeled statements plus each for-header
/// init/update assignment.
int statement_count(const Program &p);

} // namespace slicekit
