//===- amorphous.cpp - Amorphous slicing ----------------------------------===//

#include "slicekit/amorphous.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <optional>

#include "slicekit/cfg.hpp"
#include "slicekit/dataflow.hpp"
#include "slicekit/interpreter.hpp"
#include "slicekit/static_slicer.hpp"

namespace slicekit {

const char *to_string(PassKind k) {
  switch (k) {
  case PassKind::CopyPropagate:
    return "CopyPropagate";
  case PassKind::ConstantFold:
    return "ConstantFold";
  case PassKind::LoopFinalValue:
    return "LoopFinalValue";
  case PassKind::DeadCodeEliminate:
    return "DeadCodeEliminate";
  case PassKind::EmptyLoopRemoval:
    return "EmptyLoopRemoval";
  case PassKind::IndexNormalize:
    return "IndexNormalize";
  }
  return "?";
}

std::vector<PassKind> default_pass_order() {
  return {PassKind::CopyPropagate,     PassKind::ConstantFold,
          PassKind::LoopFinalValue,    PassKind::DeadCodeEliminate,
          PassKind::EmptyLoopRemoval,  PassKind::IndexNormalize};
}

namespace {

//===----------------------------------------------------------------------===//
// Rewriting utilities
//===----------------------------------------------------------------------===//

/// Returns a replacement for an (already rebuilt) node, or null to keep it.
using ExprFn = std::function<ExprPtr(const ExprPtr &)>;

ExprPtr rewrite(const ExprPtr &e, const ExprFn &f) {
  if (!e)
    return e;
  ExprPtr cur = e;
  std::visit(
      [&](const auto &x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, IndexRef>) {
          ExprPtr i = rewrite(x.index, f);
          if (i != x.index)
            cur = make_index(x.array, i);
        } else if constexpr (std::is_same_v<T, UnaryExpr>) {
          ExprPtr o = rewrite(x.operand, f);
          if (o != x.operand)
            cur = make_unary(x.op, o);
        } else if constexpr (std::is_same_v<T, BinaryExpr>) {
          ExprPtr l = rewrite(x.lhs, f);
          ExprPtr r = rewrite(x.rhs, f);
          if (l != x.lhs || r != x.rhs)
            cur = make_binary(x.op, l, r);
        }
      },
      e->node);
  if (ExprPtr r = f(cur))
    return r;
  return cur;
}

ExprFn replace_var(const std::string &v, ExprPtr with) {
  return [v, with](const ExprPtr &e) -> ExprPtr {
    if (const auto *r = std::get_if<VarRef>(&e->node); r && r->name == v)
      return with;
    return nullptr;
  };
}

void rewrite_assign(Assign &a, const ExprFn &f) {
  for (LValue &t : a.targets)
    t.index = rewrite(t.index, f);
  a.value = rewrite(a.value, f);
}

/// Rewrites the expressions evaluated by one CFG part of `s`.
void rewrite_part(Stmt &s, Part part, int index, const ExprFn &f) {
  std::visit(
      [&](auto &x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Assign>) {
          rewrite_assign(x, f);
        } else if constexpr (std::is_same_v<T, ReadStmt>) {
          x.target.index = rewrite(x.target.index, f);
        } else if constexpr (std::is_same_v<T, PrintStmt>) {
          x.value = rewrite(x.value, f);
        } else if constexpr (std::is_same_v<T, ForStmt>) {
          if (part == Part::Init)
            rewrite_assign(x.init[index], f);
          else if (part == Part::Update)
            rewrite_assign(x.update[index], f);
          else
            x.cond = rewrite(x.cond, f);
        } else if constexpr (!std::is_same_v<T, DeclStmt>) {
          x.cond = rewrite(x.cond, f);
        }
      },
      s.node);
}

/// Rewrites every expression of a statement's header (not nested blocks).
void rewrite_header(Stmt &s, const ExprFn &f) {
  if (auto *fs = std::get_if<ForStmt>(&s.node)) {
    for (Assign &a : fs->init)
      rewrite_assign(a, f);
    fs->cond = rewrite(fs->cond, f);
    for (Assign &a : fs->update)
      rewrite_assign(a, f);
  } else {
    rewrite_part(s, Part::Main, 0, f);
  }
}

template <typename F> void walk_mut(Block &b, F &&f) {
  for (Stmt &s : b) {
    f(s);
    if (auto *i = std::get_if<IfStmt>(&s.node)) {
      walk_mut(i->then_block, f);
      walk_mut(i->else_block, f);
    } else if (auto *w = std::get_if<WhileStmt>(&s.node)) {
      walk_mut(w->body, f);
    } else if (auto *fs = std::get_if<ForStmt>(&s.node)) {
      walk_mut(fs->body, f);
    }
  }
}

Stmt *find_mut(Program &p, Label l) {
  Stmt *found = nullptr;
  walk_mut(p.body, [&](Stmt &s) {
    if (s.label == l)
      found = &s;
  });
  return found;
}

void remove_labels(Block &b, const LabelSet &dead) {
  std::erase_if(b, [&](const Stmt &s) { return dead.count(s.label) > 0; });
  for (Stmt &s : b) {
    if (auto *i = std::get_if<IfStmt>(&s.node)) {
      remove_labels(i->then_block, dead);
      remove_labels(i->else_block, dead);
      if (i->else_block.empty())
        i->has_else = false;
    } else if (auto *w = std::get_if<WhileStmt>(&s.node)) {
      remove_labels(w->body, dead);
    } else if (auto *fs = std::get_if<ForStmt>(&s.node)) {
      remove_labels(fs->body, dead);
    }
  }
}

const Assign *node_assign(const Stmt &s, const CfgNode &n) {
  if (const auto *f = std::get_if<ForStmt>(&s.node)) {
    if (n.part == Part::Init)
      return &f->init[n.index];
    if (n.part == Part::Update)
      return &f->update[n.index];
    return nullptr;
  }
  return std::get_if<Assign>(&s.node);
}

std::map<Label, const Stmt *> stmt_index(const Program &p) {
  std::map<Label, const Stmt *> out;
  for_each_stmt(p, [&](const Stmt &s) { out[s.label] = &s; });
  return out;
}

bool references(const Stmt &s, const VarSet &vars) {
  const auto hv = header_vars(s);
  return std::any_of(vars.begin(), vars.end(),
                     [&](const std::string &v) { return hv.count(v) > 0; });
}

/// Whether a statement may be deleted or rewritten away. The criterion
/// statement survives unless it sits at top level and does not mention the
/// criterion variables, in which case observing them there is the same as
/// observing them at exit (the slice holds nothing after it).
bool removable(const Program &p, const Stmt &s, const StaticCriterion &c) {
  if (s.is_decl())
    return false;
  if (s.label != c.statement)
    return true;
  return is_top_level(p, s.label) && !references(s, c.variables);
}

Liveness criterion_liveness(const Cfg &cfg, const StaticCriterion &c) {
  std::map<int, std::set<std::string>> extra;
  extra[Cfg::kExit] = c.variables;
  if (int n = cfg.main_node(c.statement); n >= 0)
    extra[n].insert(c.variables.begin(), c.variables.end());
  return live_variables(cfg, extra);
}

/// Successor of a loop predicate's false edge.
int loop_exit(const Cfg &cfg, int pred) {
  for (const CfgEdge &e : cfg.edges())
    if (e.from == pred && e.tag == BranchTag::False)
      return e.to;
  return Cfg::kExit;
}

//===----------------------------------------------------------------------===//
// Loop shape queries
//===----------------------------------------------------------------------===//

void assign_uses(const Assign &a, std::set<std::string> &out) {
  for (const LValue &t : a.targets)
    collect_vars(t.index, out);
  collect_vars(a.value, out);
}

void assign_defs(const Assign &a, std::set<std::string> &out) {
  for (const LValue &t : a.targets)
    out.insert(t.name);
}

/// Variables read / written anywhere in a block (nested statements
/// included).
void block_uses(const Block &b, std::set<std::string> &out) {
  for_each_stmt(b, [&](const Stmt &s) {
    std::visit(
        [&](const auto &x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, Assign>) {
            assign_uses(x, out);
          } else if constexpr (std::is_same_v<T, ReadStmt>) {
            collect_vars(x.target.index, out);
          } else if constexpr (std::is_same_v<T, PrintStmt>) {
            collect_vars(x.value, out);
          } else if constexpr (std::is_same_v<T, ForStmt>) {
            for (const Assign &a : x.init)
              assign_uses(a, out);
            collect_vars(x.cond, out);
            for (const Assign &a : x.update)
              assign_uses(a, out);
          } else if constexpr (!std::is_same_v<T, DeclStmt>) {
            collect_vars(x.cond, out);
          }
        },
        s.node);
  });
}

void block_defs(const Block &b, std::set<std::string> &out) {
  for_each_stmt(b, [&](const Stmt &s) {
    if (const auto *a = std::get_if<Assign>(&s.node))
      assign_defs(*a, out);
    else if (const auto *r = std::get_if<ReadStmt>(&s.node))
      out.insert(r->target.name);
    else if (const auto *f = std::get_if<ForStmt>(&s.node)) {
      for (const Assign &a : f->init)
        assign_defs(a, out);
      for (const Assign &a : f->update)
        assign_defs(a, out);
    }
  });
}

int count_defs(const Block &b, const std::string &v) {
  int n = 0;
  auto count = [&](const Assign &a) {
    for (const LValue &t : a.targets)
      n += t.name == v;
  };
  for_each_stmt(b, [&](const Stmt &s) {
    if (const auto *a = std::get_if<Assign>(&s.node))
      count(*a);
    else if (const auto *r = std::get_if<ReadStmt>(&s.node))
      n += r->target.name == v;
    else if (const auto *f = std::get_if<ForStmt>(&s.node)) {
      for (const Assign &a : f->init)
        count(a);
      for (const Assign &a : f->update)
        count(a);
    }
  });
  return n;
}

bool is_scalar_assign_to(const Assign &a, const std::string &v) {
  return a.targets.size() == 1 && a.target().name == v && !a.target().is_element();
}

/// `for (..., i = c0, ...; i < c1 | i <= c1; ..., i = i + 1, ...)` where the
/// body never writes i and the loop runs at least once.
struct CountedLoop {
  std::string var;
  std::int64_t first = 0; // c0
  std::int64_t bound = 0; // c1
  bool inclusive = false;
  std::int64_t exit = 0; // value of i once the loop ends
  std::size_t init_pos = 0;
  std::size_t update_pos = 0;
};

std::optional<CountedLoop> counted_loop(const ForStmt &f) {
  const auto *cmp = std::get_if<BinaryExpr>(&f.cond->node);
  if (!cmp || (cmp->op != BinaryOp::Lt && cmp->op != BinaryOp::Le))
    return std::nullopt;
  const auto *iv = std::get_if<VarRef>(&cmp->lhs->node);
  const auto *hi = std::get_if<IntLit>(&cmp->rhs->node);
  if (!iv || !hi)
    return std::nullopt;
  CountedLoop L;
  L.var = iv->name;
  L.bound = hi->value;
  L.inclusive = cmp->op == BinaryOp::Le;

  int inits = 0;
  for (std::size_t k = 0; k < f.init.size(); ++k) {
    for (const LValue &t : f.init[k].targets)
      if (t.name == L.var) {
        ++inits;
        L.init_pos = k;
      }
  }
  if (inits != 1 || !is_scalar_assign_to(f.init[L.init_pos], L.var))
    return std::nullopt;
  const auto *lo = std::get_if<IntLit>(&f.init[L.init_pos].value->node);
  if (!lo)
    return std::nullopt;
  L.first = lo->value;

  int updates = 0;
  for (std::size_t k = 0; k < f.update.size(); ++k)
    for (const LValue &t : f.update[k].targets)
      if (t.name == L.var) {
        ++updates;
        L.update_pos = k;
      }
  if (updates != 1 || !is_scalar_assign_to(f.update[L.update_pos], L.var))
    return std::nullopt;
  const auto *inc = std::get_if<BinaryExpr>(&f.update[L.update_pos].value->node);
  if (!inc || inc->op != BinaryOp::Add)
    return std::nullopt;
  const auto *self = std::get_if<VarRef>(&inc->lhs->node);
  const auto *one = std::get_if<IntLit>(&inc->rhs->node);
  if (!self || self->name != L.var || !one || one->value != 1)
    return std::nullopt;

  if (count_defs(f.body, L.var) != 0)
    return std::nullopt;
  if (L.bound >= std::numeric_limits<std::int64_t>::max() - 1)
    return std::nullopt;
  L.exit = L.inclusive ? L.bound + 1 : L.bound;
  if (L.exit - L.first < 1)
    return std::nullopt;
  return L;
}

bool contains_label(const Block &b, Label l) {
  bool found = false;
  for_each_stmt(b, [&](const Stmt &s) { found = found || s.label == l; });
  return found;
}

//===----------------------------------------------------------------------===//
// CopyPropagate
//===----------------------------------------------------------------------===//

/// Nodes on some path d -> ... -> u that does not revisit d (endpoints
/// excluded unless they lie on a cycle avoiding d).
std::set<int> region_between(const Cfg &cfg, int d, int u) {
  auto bfs = [&](int start, bool forward) {
    std::set<int> seen;
    std::vector<int> work;
    for (int n : forward ? cfg.succs(start) : cfg.preds(start))
      if (n != d && seen.insert(n).second)
        work.push_back(n);
    while (!work.empty()) {
      int n = work.back();
      work.pop_back();
      for (int m : forward ? cfg.succs(n) : cfg.preds(n))
        if (m != d && seen.insert(m).second)
          work.push_back(m);
    }
    return seen;
  };
  std::set<int> fwd = bfs(d, true);
  std::set<int> bwd = bfs(u, false);
  std::set<int> out;
  std::set_intersection(fwd.begin(), fwd.end(), bwd.begin(), bwd.end(),
                        std::inserter(out, out.end()));
  return out;
}

Program copy_propagate(const Program &p, const StaticCriterion &) {
  const Cfg cfg = build_cfg(p);
  const ReachingDefs rd = reaching_definitions(cfg);
  const auto stmts = stmt_index(p);
  const auto syms = symbols(p);

  struct Sub {
    int node;
    std::string var;
    ExprPtr with;
  };
  std::vector<Sub> subs;
  for (int u = 2; u < cfg.size(); ++u) {
    const CfgNode &use = cfg.node(u);
    if (stmts.at(use.label)->is_decl())
      continue;
    for (const std::string &v : use.du.uses) {
      auto sym = syms.find(v);
      if (sym == syms.end() || sym->second.is_array)
        continue;
      const std::vector<int> defs = rd.reaching(u, v);
      if (defs.size() != 1)
        continue;
      const int d = defs.front();
      const Stmt &ds = *stmts.at(cfg.node(d).label);
      if (ds.is_decl())
        continue;
      const Assign *a = node_assign(ds, cfg.node(d));
      if (!a || !is_scalar_assign_to(*a, v))
        continue;
      std::string source;
      if (std::holds_alternative<IntLit>(a->value->node)) {
        // literals need no stability check
      } else if (const auto *w = std::get_if<VarRef>(&a->value->node)) {
        if (w->name == v)
          continue;
        source = w->name;
      } else if (const auto *x = std::get_if<IndexRef>(&a->value->node)) {
        if (!std::holds_alternative<IntLit>(x->index->node))
          continue;
        source = x->array;
      } else {
        continue;
      }
      if (!source.empty()) {
        bool stable = true;
        for (int n : region_between(cfg, d, u))
          stable = stable && !cfg.node(n).du.defs.count(source);
        if (!stable)
          continue;
      }
      subs.push_back({u, v, a->value});
    }
  }
  if (subs.empty())
    return p;

  Program q = p;
  for (const Sub &s : subs) {
    const CfgNode &n = cfg.node(s.node);
    rewrite_part(*find_mut(q, n.label), n.part, n.index, replace_var(s.var, s.with));
  }
  return q;
}

//===----------------------------------------------------------------------===//
// ConstantFold
//===----------------------------------------------------------------------===//

ExprPtr fold_node(const ExprPtr &e) {
  if (const auto *u = std::get_if<UnaryExpr>(&e->node)) {
    const auto *lit = std::get_if<IntLit>(&u->operand->node);
    if (lit && (u->op == UnaryOp::Neg || u->op == UnaryOp::Not))
      return make_int(eval_unary(u->op, lit->value));
    return nullptr;
  }
  const auto *b = std::get_if<BinaryExpr>(&e->node);
  if (!b)
    return nullptr;
  const auto *l = std::get_if<IntLit>(&b->lhs->node);
  const auto *r = std::get_if<IntLit>(&b->rhs->node);
  if (l && r) {
    auto v = eval_binary(b->op, l->value, r->value);
    return v ? make_int(*v) : nullptr;
  }
  auto is = [](const IntLit *lit, std::int64_t v) { return lit && lit->value == v; };
  switch (b->op) {
  case BinaryOp::Add:
    if (is(r, 0))
      return b->lhs;
    if (is(l, 0))
      return b->rhs;
    break;
  case BinaryOp::Sub:
    if (is(r, 0))
      return b->lhs;
    break;
  case BinaryOp::Mul:
    if (is(r, 1))
      return b->lhs;
    if (is(l, 1))
      return b->rhs;
    break;
  case BinaryOp::Div:
    if (is(r, 1))
      return b->lhs;
    break;
  default:
    break;
  }
  return nullptr;
}

Program constant_fold(const Program &p, const StaticCriterion &) {
  Program q = p;
  walk_mut(q.body, [](Stmt &s) { rewrite_header(s, fold_node); });
  return q;
}

//===----------------------------------------------------------------------===//
// LoopFinalValue
//===----------------------------------------------------------------------===//

/// Tries every in-loop assignment `v = E` of one counted loop; on success
/// the assignment is deleted and `v = E[i := last]` is returned for
/// insertion after the loop.
std::optional<Assign> extract_final_value(ForStmt &f, const StaticCriterion &c,
                                          Label loop_label) {
  if (loop_label == c.statement || contains_label(f.body, c.statement))
    return std::nullopt;
  auto L = counted_loop(f);
  if (!L)
    return std::nullopt;

  std::set<std::string> assigned;
  block_defs(f.body, assigned);
  for (const Assign &a : f.update)
    assign_defs(a, assigned);
  std::set<std::string> used;
  collect_vars(f.cond, used);
  block_uses(f.body, used);
  for (const Assign &a : f.update)
    assign_uses(a, used);

  auto candidate = [&](const Assign &a, std::int64_t i_last) -> std::optional<Assign> {
    if (a.targets.size() != 1 || a.target().is_element())
      return std::nullopt;
    const std::string &v = a.target().name;
    if (v == L->var || used.count(v))
      return std::nullopt;
    int defs = count_defs(f.body, v);
    for (const Assign &u : f.update)
      for (const LValue &t : u.targets)
        defs += t.name == v;
    if (defs != 1)
      return std::nullopt;
    for (const std::string &x : expr_vars(a.value))
      if (x != L->var && assigned.count(x))
        return std::nullopt;
    Assign out = a;
    out.value = rewrite(a.value, replace_var(L->var, make_int(i_last)));
    return out;
  };

  for (std::size_t k = 0; k < f.update.size(); ++k) {
    if (k == L->update_pos)
      continue;
    std::int64_t last = k > L->update_pos ? L->exit : L->exit - 1;
    if (auto out = candidate(f.update[k], last)) {
      f.update.erase(f.update.begin() + static_cast<std::ptrdiff_t>(k));
      return out;
    }
  }
  for (std::size_t k = 0; k < f.body.size(); ++k) {
    const auto *a = std::get_if<Assign>(&f.body[k].node);
    if (!a)
      continue;
    if (auto out = candidate(*a, L->exit - 1)) {
      f.body.erase(f.body.begin() + static_cast<std::ptrdiff_t>(k));
      return out;
    }
  }
  return std::nullopt;
}

bool final_value_in(Block &b, const StaticCriterion &c, Label &next) {
  for (std::size_t j = 0; j < b.size(); ++j) {
    Stmt &s = b[j];
    if (auto *fs = std::get_if<ForStmt>(&s.node)) {
      if (auto a = extract_final_value(*fs, c, s.label)) {
        Stmt after{next, s.line, std::move(*a)};
        next = Label{next.value + 1};
        b.insert(b.begin() + static_cast<std::ptrdiff_t>(j) + 1, std::move(after));
        return true;
      }
      if (final_value_in(fs->body, c, next))
        return true;
    } else if (auto *w = std::get_if<WhileStmt>(&s.node)) {
      if (final_value_in(w->body, c, next))
        return true;
    } else if (auto *i = std::get_if<IfStmt>(&s.node)) {
      if (final_value_in(i->then_block, c, next) || final_value_in(i->else_block, c, next))
        return true;
    }
  }
  return false;
}

Program loop_final_value(const Program &p, const StaticCriterion &c) {
  Program q = p;
  Label next{max_label(p).value + 1};
  return final_value_in(q.body, c, next) ? q : p;
}

//===----------------------------------------------------------------------===//
// DeadCodeEliminate
//===----------------------------------------------------------------------===//

Program dead_code_eliminate(const Program &p, const StaticCriterion &c) {
  const Cfg cfg = build_cfg(p);
  const Liveness lv = criterion_liveness(cfg, c);
  const auto stmts = stmt_index(p);

  LabelSet dead;
  std::map<Label, std::set<std::pair<Part, int>>> dead_parts;
  for (int n = 2; n < cfg.size(); ++n) {
    const CfgNode &node = cfg.node(n);
    const Stmt &s = *stmts.at(node.label);
    if (!removable(p, s, c))
      continue;
    const auto &out = lv.out[n];
    if (const Assign *a = node_assign(s, node)) {
      const LValue &t = a->target();
      const auto *self = std::get_if<VarRef>(&a->value->node);
      bool identity = !t.is_element() && self && self->name == t.name;
      if (identity || !out.count(t.name)) {
        if (node.part == Part::Main)
          dead.insert(node.label);
        else
          dead_parts[node.label].insert({node.part, node.index});
      }
    } else if (const auto *r = std::get_if<ReadStmt>(&s.node)) {
      if (!out.count(r->target.name) && !out.count(kInputCursor))
        dead.insert(node.label);
    } else if (std::holds_alternative<PrintStmt>(s.node)) {
      dead.insert(node.label);
    } else if (const auto *i = std::get_if<IfStmt>(&s.node)) {
      if (i->then_block.empty() && i->else_block.empty())
        dead.insert(node.label);
    }
  }
  if (dead.empty() && dead_parts.empty())
    return p;

  Program q = p;
  for (const auto &[label, parts] : dead_parts) {
    auto &f = std::get<ForStmt>(find_mut(q, label)->node);
    for (auto it = parts.rbegin(); it != parts.rend(); ++it) {
      auto &list = it->first == Part::Init ? f.init : f.update;
      list.erase(list.begin() + it->second);
    }
  }
  remove_labels(q.body, dead);
  return q;
}

//===----------------------------------------------------------------------===//
// EmptyLoopRemoval
//===----------------------------------------------------------------------===//

Program empty_loop_removal(const Program &p, const StaticCriterion &c) {
  const Cfg cfg = build_cfg(p);
  const Liveness lv = criterion_liveness(cfg, c);
  LabelSet dead;
  for_each_stmt(p.body, [&](const Stmt &s) {
    if (!removable(p, s, c))
      return;
    if (const auto *w = std::get_if<WhileStmt>(&s.node)) {
      if (w->body.empty())
        dead.insert(s.label);
    } else if (const auto *f = std::get_if<ForStmt>(&s.node)) {
      if (!f->body.empty())
        return;
      std::set<std::string> written;
      for (const Assign &a : f->init)
        assign_defs(a, written);
      for (const Assign &a : f->update)
        assign_defs(a, written);
      const auto &live = lv.in[loop_exit(cfg, cfg.main_node(s.label))];
      if (std::none_of(written.begin(), written.end(),
                       [&](const std::string &v) { return live.count(v) > 0; }))
        dead.insert(s.label);
    }
  });
  if (dead.empty())
    return p;
  Program q = p;
  remove_labels(q.body, dead);
  return q;
}

//===----------------------------------------------------------------------===//
// IndexNormalize
//===----------------------------------------------------------------------===//

/// True when every body occurrence of `i` has the form `i + k` for one
/// shared k != 0, which is stored in `shift`.
bool uniform_offset(const Block &body, const std::string &i, std::int64_t &shift) {
  bool ok = true;
  bool seen = false;
  std::function<void(const ExprPtr &)> visit = [&](const ExprPtr &e) {
    if (!e || !ok)
      return;
    std::visit(
        [&](const auto &x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, VarRef>) {
            if (x.name == i)
              ok = false;
          } else if constexpr (std::is_same_v<T, IndexRef>) {
            visit(x.index);
          } else if constexpr (std::is_same_v<T, UnaryExpr>) {
            visit(x.operand);
          } else if constexpr (std::is_same_v<T, BinaryExpr>) {
            const auto *v = std::get_if<VarRef>(&x.lhs->node);
            const auto *k = std::get_if<IntLit>(&x.rhs->node);
            if (x.op == BinaryOp::Add && v && v->name == i && k) {
              if (k->value == 0 || (seen && k->value != shift))
                ok = false;
              shift = k->value;
              seen = true;
              return;
            }
            visit(x.lhs);
            visit(x.rhs);
          }
        },
        e->node);
  };
  for_each_stmt(body, [&](const Stmt &s) {
    std::visit(
        [&](const auto &x) {
          using T = std::decay_t<decltype(x)>;
          auto visit_assign = [&](const Assign &a) {
            for (const LValue &t : a.targets)
              visit(t.index);
            visit(a.value);
          };
          if constexpr (std::is_same_v<T, Assign>) {
            visit_assign(x);
          } else if constexpr (std::is_same_v<T, ReadStmt>) {
            visit(x.target.index);
          } else if constexpr (std::is_same_v<T, PrintStmt>) {
            visit(x.value);
          } else if constexpr (std::is_same_v<T, ForStmt>) {
            for (const Assign &a : x.init)
              visit_assign(a);
            visit(x.cond);
            for (const Assign &a : x.update)
              visit_assign(a);
          } else if constexpr (!std::is_same_v<T, DeclStmt>) {
            visit(x.cond);
          }
        },
        s.node);
  });
  return ok && seen;
}

bool normalize_index_in(Block &b, const StaticCriterion &c,
                        const std::function<bool(Label, const std::string &)> &dead_after) {
  for (Stmt &s : b) {
    if (auto *fs = std::get_if<ForStmt>(&s.node)) {
      auto L = counted_loop(*fs);
      std::int64_t k = 0;
      bool ok = L && !c.variables.count(L->var) && uniform_offset(fs->body, L->var, k);
      if (ok) {
        for (std::size_t j = L->init_pos + 1; j < fs->init.size(); ++j) {
          std::set<std::string> u;
          assign_uses(fs->init[j], u);
          ok = ok && !u.count(L->var);
        }
        for (std::size_t j = 0; j < fs->update.size(); ++j) {
          if (j == L->update_pos)
            continue;
          std::set<std::string> u;
          assign_uses(fs->update[j], u);
          ok = ok && !u.count(L->var);
        }
        ok = ok && dead_after(s.label, L->var);
      }
      if (ok) {
        const std::string i = L->var;
        fs->init[L->init_pos].value = make_int(L->first + k);
        auto &cmp = std::get<BinaryExpr>(fs->cond->node);
        fs->cond = make_binary(cmp.op, cmp.lhs, make_int(L->bound + k));
        walk_mut(fs->body, [&](Stmt &t) {
          rewrite_header(t, [&](const ExprPtr &e) -> ExprPtr {
            const auto *bin = std::get_if<BinaryExpr>(&e->node);
            if (!bin || bin->op != BinaryOp::Add)
              return nullptr;
            const auto *v = std::get_if<VarRef>(&bin->lhs->node);
            const auto *lit = std::get_if<IntLit>(&bin->rhs->node);
            if (v && v->name == i && lit && lit->value == k)
              return bin->lhs;
            return nullptr;
          });
        });
        return true;
      }
      if (normalize_index_in(fs->body, c, dead_after))
        return true;
    } else if (auto *w = std::get_if<WhileStmt>(&s.node)) {
      if (normalize_index_in(w->body, c, dead_after))
        return true;
    } else if (auto *i = std::get_if<IfStmt>(&s.node)) {
      if (normalize_index_in(i->then_block, c, dead_after) ||
          normalize_index_in(i->else_block, c, dead_after))
        return true;
    }
  }
  return false;
}

Program index_normalize(const Program &p, const StaticCriterion &c) {
  const Cfg cfg = build_cfg(p);
  const Liveness lv = criterion_liveness(cfg, c);
  auto dead_after = [&](Label loop, const std::string &v) {
    return !lv.in[loop_exit(cfg, cfg.main_node(loop))].count(v);
  };
  Program q = p;
  return normalize_index_in(q.body, c, dead_after) ? q : p;
}

} // namespace

Program apply_pass(PassKind k, const Program &p, const StaticCriterion &c) {
  switch (k) {
  case PassKind::CopyPropagate:
    return copy_propagate(p, c);
  case PassKind::ConstantFold:
    return constant_fold(p, c);
  case PassKind::LoopFinalValue:
    return loop_final_value(p, c);
  case PassKind::DeadCodeEliminate:
    return dead_code_eliminate(p, c);
  case PassKind::EmptyLoopRemoval:
    return empty_loop_removal(p, c);
  case PassKind::IndexNormalize:
    return index_normalize(p, c);
  }
  return p;
}

AmorphousSlice amorphous_slice(const Program &p, const StaticCriterion &c,
                               const AmorphousOptions &opts) {
  AmorphousSlice out;
  out.syntax_preserving = backward_slice(p, c);
  Program cur = out.syntax_preserving.projected;

  const int cap = opts.max_rounds > 0
                      ? opts.max_rounds
                      : std::max<int>(1, static_cast<int>(all_labels(p).size() *
                                                          opts.order.size()));
  for (int round = 1; round <= cap; ++round) {
    out.rounds = round;
    bool changed = false;
    for (PassKind k : opts.order) {
      Program next = apply_pass(k, cur, c);
      if (!(next == cur)) {
        changed = true;
        out.log.push_back("round " + std::to_string(round) + ": " + to_string(k));
        cur = std::move(next);
      }
    }
    if (!changed)
      break;
  }
  out.criterion_kept = find_stmt(cur, c.statement) != nullptr;
  out.program = std::move(cur);
  return out;
}

} // namespace slicekit
