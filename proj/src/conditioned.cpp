//===- conditioned.cpp - Conditioned (quasi-static) slicing ---------------===//

#include "slicekit/conditioned.hpp"

#include "slicekit/error.hpp"
#include "slicekit/pdg.hpp"
#include "slicekit/static_slicer.hpp"
#include "slicekit/transform.hpp"

namespace slicekit {

ConstValue join(ConstValue a, ConstValue b) {
  if (a.kind == ConstValue::Bottom)
    return b;
  if (b.kind == ConstValue::Bottom)
    return a;
  if (a == b)
    return a;
  return ConstValue::top();
}

namespace {

ConstValue eval(const ExprPtr &e, const ConstEnv &env) {
  return std::visit(
      [&](const auto &x) -> ConstValue {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, IntLit>) {
          return ConstValue::constant(x.value);
        } else if constexpr (std::is_same_v<T, VarRef>) {
          auto it = env.find(x.name);
          return it == env.end() ? ConstValue::top() : it->second;
        } else if constexpr (std::is_same_v<T, IndexRef>) {
          ConstValue i = eval(x.index, env);
          return i.kind == ConstValue::Bottom ? i : ConstValue::top();
        } else if constexpr (std::is_same_v<T, UnaryExpr>) {
          ConstValue v = eval(x.operand, env);
          if (v.kind != ConstValue::Const)
            return v;
          if (x.op != UnaryOp::Neg && x.op != UnaryOp::Not)
            return ConstValue::top();
          return ConstValue::constant(eval_unary(x.op, v.value));
        } else {
          ConstValue a = eval(x.lhs, env);
          ConstValue b = eval(x.rhs, env);
          if (a.kind == ConstValue::Bottom || b.kind == ConstValue::Bottom)
            return ConstValue::bottom();
          if (x.op == BinaryOp::And &&
              ((a.kind == ConstValue::Const && a.value == 0) ||
               (b.kind == ConstValue::Const && b.value == 0)))
            return ConstValue::constant(0);
          if (x.op == BinaryOp::Or &&
              ((a.kind == ConstValue::Const && a.value != 0) ||
               (b.kind == ConstValue::Const && b.value != 0)))
            return ConstValue::constant(1);
          if (a.kind != ConstValue::Const || b.kind != ConstValue::Const)
            return ConstValue::top();
          auto r = eval_binary(x.op, a.value, b.value);
          return r ? ConstValue::constant(*r) : ConstValue::top();
        }
      },
      e->node);
}

/// The assignment a CFG node performs, if any.
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

const ExprPtr *node_predicate(const Stmt &s, const CfgNode &n) {
  if (n.part != Part::Main)
    return nullptr;
  if (const auto *i = std::get_if<IfStmt>(&s.node))
    return &i->cond;
  if (const auto *w = std::get_if<WhileStmt>(&s.node))
    return &w->cond;
  if (const auto *f = std::get_if<ForStmt>(&s.node))
    return &f->cond;
  return nullptr;
}

std::map<Label, const Stmt *> stmt_index(const Program &p) {
  std::map<Label, const Stmt *> out;
  for_each_stmt(p, [&](const Stmt &s) { out[s.label] = &s; });
  return out;
}

} // namespace

std::map<std::string, PinPoint>
fixing_points(const Program &p, const Cfg &cfg,
              const std::map<std::string, std::int64_t> &fixed) {
  const auto syms = symbols(p);
  const auto stmts = stmt_index(p);
  std::map<std::string, PinPoint> out;
  for (const auto &[var, value] : fixed) {
    auto sym = syms.find(var);
    if (sym == syms.end())
      throw AnalysisError(AnalysisErrorKind::InvalidCriterion,
                          "fixed variable '" + var + "' is not declared");
    if (sym->second.is_array)
      throw AnalysisError(AnalysisErrorKind::InvalidCriterion,
                          "cannot fix array '" + var + "'");
    int first = -1;
    for (int n = 0; n < cfg.size() && first < 0; ++n) {
      const CfgNode &node = cfg.node(n);
      if (node.part == Part::Entry || node.part == Part::Exit)
        continue;
      if (stmts.at(node.label)->is_decl())
        continue;
      if (node.du.kills.count(var))
        first = n;
    }
    if (first < 0) {
      if (value != 0)
        throw AnalysisError(AnalysisErrorKind::ContradictoryFixing,
                            "'" + var + "' is never assigned, so it stays 0, not " +
                                std::to_string(value));
      out[var] = PinPoint{sym->second.decl, Part::Main, 0};
      continue;
    }
    const CfgNode &node = cfg.node(first);
    if (const Assign *a = node_assign(*stmts.at(node.label), node)) {
      if (const auto *lit = std::get_if<IntLit>(&a->value->node);
          lit && lit->value != value)
        throw AnalysisError(AnalysisErrorKind::ContradictoryFixing,
                            "'" + var + "' is first assigned " +
                                std::to_string(lit->value) + " at statement " +
                                std::to_string(node.label.value) + ", not " +
                                std::to_string(value));
    }
    out[var] = PinPoint{node.label, node.part, node.index};
  }
  return out;
}

ConstantPropagation propagate_constants(const Program &p, const Cfg &cfg,
                                        const std::map<std::string, std::int64_t> &fixed) {
  const auto stmts = stmt_index(p);
  std::map<int, std::pair<std::string, std::int64_t>> pins;
  for (const auto &[var, pt] : fixing_points(p, cfg, fixed)) {
    for (int n : cfg.nodes_of(pt.label)) {
      const CfgNode &node = cfg.node(n);
      if (node.part == pt.part && node.index == pt.index)
        pins[n] = {var, fixed.at(var)};
    }
  }

  const int n = cfg.size();
  ConstantPropagation cp;
  cp.executable.assign(n, false);
  cp.in.assign(n, {});
  std::vector<ConstEnv> out(n);
  std::vector<ConstValue> cond(n);

  auto transfer = [&](int v) {
    const CfgNode &node = cfg.node(v);
    ConstEnv env = cp.in[v];
    if (node.part == Part::Entry || node.part == Part::Exit)
      return env;
    const Stmt &s = *stmts.at(node.label);
    if (const auto *d = std::get_if<DeclStmt>(&s.node)) {
      for (const Declarator &decl : d->vars)
        env[decl.name] = decl.size ? ConstValue::top() : ConstValue::constant(0);
    } else if (const Assign *a = node_assign(s, node)) {
      const LValue &lv = a->target();
      if (!lv.is_element())
        env[lv.name] = eval(a->value, env);
    } else if (const auto *r = std::get_if<ReadStmt>(&s.node)) {
      if (!r->target.is_element())
        env[r->target.name] = ConstValue::top();
    } else if (const ExprPtr *c = node_predicate(s, node)) {
      cond[v] = eval(*c, env);
    }
    if (auto pin = pins.find(v); pin != pins.end())
      env[pin->second.first] = ConstValue::constant(pin->second.second);
    return env;
  };

  auto edge_live = [&](const CfgEdge &e) {
    if (!cp.executable[e.from])
      return false;
    const ConstValue &c = cond[e.from];
    switch (e.tag) {
    case BranchTag::Seq:
      return true;
    case BranchTag::True:
      return c.kind == ConstValue::Top || (c.kind == ConstValue::Const && c.value != 0);
    case BranchTag::False:
      return c.kind == ConstValue::Top || (c.kind == ConstValue::Const && c.value == 0);
    }
    return false;
  };

  cp.executable[Cfg::kEntry] = true;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int v = 0; v < n; ++v) {
      bool exec = v == Cfg::kEntry;
      ConstEnv in;
      for (const CfgEdge &e : cfg.edges()) {
        if (e.to != v || !edge_live(e))
          continue;
        exec = true;
        for (const auto &[var, val] : out[e.from])
          in[var] = join(in[var], val);
      }
      if (!exec)
        continue;
      if (!cp.executable[v] || in != cp.in[v]) {
        cp.executable[v] = true;
        cp.in[v] = std::move(in);
        changed = true;
      }
      ConstEnv o = transfer(v);
      if (o != out[v]) {
        out[v] = std::move(o);
        changed = true;
      }
    }
  }

  cp.edge_executable.reserve(cfg.edges().size());
  for (const CfgEdge &e : cfg.edges())
    cp.edge_executable.push_back(edge_live(e));

  for (Label l : all_labels(p)) {
    bool any = false;
    for (int node : cfg.nodes_of(l))
      any = any || cp.executable[node];
    if (!any)
      cp.pruned.insert(l);
  }
  return cp;
}

Slice conditioned_slice(const Program &p, const ConditionedCriterion &c) {
  validate_criterion(p, c.statement, c.variables);
  const Cfg cfg = build_cfg(p);
  const ConstantPropagation cp = propagate_constants(p, cfg, c.fixed);

  Slice out;
  out.technique = Technique::Conditioned;
  out.criterion = c;
  if (cp.pruned.count(c.statement)) {
    out.labels = decl_labels(p);
    out.notes.push_back("statement " + std::to_string(c.statement.value) +
                        " cannot execute under the fixed values");
  } else {
    Cfg live;
    for (const CfgNode &n : cfg.nodes())
      live.add_node(n);
    for (std::size_t k = 0; k < cfg.edges().size(); ++k)
      if (cp.edge_executable[k]) {
        const CfgEdge &e = cfg.edges()[k];
        live.add_edge(e.from, e.to, e.tag);
      }
    PostDomTree pdt = postdominators(cfg);
    std::vector<ControlDep> cds = control_dependences(cfg, pdt);
    const Pdg g = assemble_pdg(cfg, std::move(pdt), reaching_definitions(live), cds,
                               cp.executable);
    out.labels = backward_slice(g, p, StaticCriterion{c.statement, c.variables}).labels;
  }
  out.projected = project(p, out.labels);
  return out;
}

} // namespace slicekit
