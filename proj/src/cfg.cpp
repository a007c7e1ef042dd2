//===- cfg.cpp - Control-flow graph and postdominators --------------------===//

#include "slicekit/cfg.hpp"

#include <algorithm>
#include <functional>

#include "slicekit/printer.hpp"

namespace slicekit {

const char *to_string(Part p) {
  switch (p) {
  case Part::Entry:
    return "entry";
  case Part::Exit:
    return "exit";
  case Part::Main:
    return "main";
  case Part::Init:
    return "init";
  case Part::Update:
    return "update";
  }
  return "?";
}

const char *to_string(BranchTag t) {
  switch (t) {
  case BranchTag::Seq:
    return "seq";
  case BranchTag::True:
    return "true";
  case BranchTag::False:
    return "false";
  }
  return "?";
}

int Cfg::main_node(Label l) const {
  auto it = by_label_.find(l);
  if (it == by_label_.end())
    return -1;
  for (int n : it->second)
    if (nodes_[n].part == Part::Main)
      return n;
  return -1;
}

std::vector<int> Cfg::nodes_of(Label l) const {
  auto it = by_label_.find(l);
  return it == by_label_.end() ? std::vector<int>{} : it->second;
}

int Cfg::add_node(CfgNode n) {
  int id = size();
  if (n.part != Part::Entry && n.part != Part::Exit)
    by_label_[n.label].push_back(id);
  nodes_.push_back(std::move(n));
  succs_.emplace_back();
  preds_.emplace_back();
  return id;
}

void Cfg::add_edge(int from, int to, BranchTag tag) {
  edges_.push_back({from, to, tag});
  succs_[from].push_back(to);
  preds_[to].push_back(from);
}

namespace {

void add_lvalue_def(const LValue &lv, DefUse &du) {
  du.defs.insert(lv.name);
  if (lv.is_element())
    collect_vars(lv.index, du.uses);
  else
    du.kills.insert(lv.name);
}

DefUse assign_du(const Assign &a) {
  DefUse du;
  for (const LValue &t : a.targets) {
    add_lvalue_def(t, du);
    if (a.op != AssignOp::Set)
      du.uses.insert(t.name);
  }
  collect_vars(a.value, du.uses);
  return du;
}

DefUse stmt_du(const Stmt &s) {
  DefUse du;
  std::visit(
      [&](const auto &x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, DeclStmt>) {
          for (const Declarator &d : x.vars) {
            du.defs.insert(d.name);
            du.kills.insert(d.name);
          }
        } else if constexpr (std::is_same_v<T, Assign>) {
          du = assign_du(x);
        } else if constexpr (std::is_same_v<T, ReadStmt>) {
          add_lvalue_def(x.target, du);
          du.defs.insert(kInputCursor);
          du.kills.insert(kInputCursor);
          du.uses.insert(kInputCursor);
        } else if constexpr (std::is_same_v<T, PrintStmt>) {
          collect_vars(x.value, du.uses);
        } else {
          collect_vars(x.cond, du.uses);
        }
      },
      s.node);
  return du;
}

using Pending = std::vector<std::pair<int, BranchTag>>;

class Builder {
public:
  explicit Builder(Cfg &cfg) : cfg_(cfg) {}

  Pending block(const Block &b, Pending in) {
    for (const Stmt &s : b)
      in = stmt(s, std::move(in));
    return in;
  }

private:
  void connect(const Pending &from, int to) {
    for (auto [n, tag] : from)
      cfg_.add_edge(n, to, tag);
  }

  int node(const Stmt &s, Part part, int index, DefUse du, std::string text,
           bool pred) {
    CfgNode n;
    n.label = s.label;
    n.part = part;
    n.index = index;
    n.du = std::move(du);
    n.text = std::move(text);
    n.predicate = pred;
    return cfg_.add_node(std::move(n));
  }

  Pending stmt(const Stmt &s, Pending in) {
    if (const auto *i = std::get_if<IfStmt>(&s.node)) {
      int p = node(s, Part::Main, 0, stmt_du(s), statement_text(s), true);
      connect(in, p);
      Pending out = block(i->then_block, {{p, BranchTag::True}});
      Pending els = block(i->else_block, {{p, BranchTag::False}});
      out.insert(out.end(), els.begin(), els.end());
      return out;
    }
    if (const auto *w = std::get_if<WhileStmt>(&s.node)) {
      int p = node(s, Part::Main, 0, stmt_du(s), statement_text(s), true);
      connect(in, p);
      connect(block(w->body, {{p, BranchTag::True}}), p);
      return {{p, BranchTag::False}};
    }
    if (const auto *f = std::get_if<ForStmt>(&s.node)) {
      for (std::size_t k = 0; k < f->init.size(); ++k) {
        int n = node(s, Part::Init, static_cast<int>(k), assign_du(f->init[k]),
                     assign_text(f->init[k]), false);
        connect(in, n);
        in = {{n, BranchTag::Seq}};
      }
      int p = node(s, Part::Main, 0, stmt_du(s), statement_text(s), true);
      connect(in, p);
      Pending back = block(f->body, {{p, BranchTag::True}});
      for (std::size_t k = 0; k < f->update.size(); ++k) {
        int n = node(s, Part::Update, static_cast<int>(k),
                     assign_du(f->update[k]), assign_text(f->update[k]), false);
        connect(back, n);
        back = {{n, BranchTag::Seq}};
      }
      connect(back, p);
      return {{p, BranchTag::False}};
    }
    int n = node(s, Part::Main, 0, stmt_du(s), statement_text(s), false);
    connect(in, n);
    return {{n, BranchTag::Seq}};
  }

  Cfg &cfg_;
};

} // namespace

Cfg build_cfg(const Program &p) {
  Cfg cfg;
  CfgNode entry;
  entry.part = Part::Entry;
  entry.text = "Entry";
  cfg.add_node(entry);
  CfgNode exit;
  exit.part = Part::Exit;
  exit.text = "Exit";
  cfg.add_node(exit);

  Builder b(cfg);
  Pending out = b.block(p.decls, {{Cfg::kEntry, BranchTag::Seq}});
  out = b.block(p.body, std::move(out));
  for (auto [n, tag] : out)
    cfg.add_edge(n, Cfg::kExit, tag);
  return cfg;
}

std::map<Label, DefUse> def_use(const Cfg &cfg) {
  std::map<Label, DefUse> out;
  for (const CfgNode &n : cfg.nodes()) {
    if (n.part == Part::Entry || n.part == Part::Exit)
      continue;
    DefUse &du = out[n.label];
    du.defs.insert(n.du.defs.begin(), n.du.defs.end());
    du.uses.insert(n.du.uses.begin(), n.du.uses.end());
    du.kills.insert(n.du.kills.begin(), n.du.kills.end());
  }
  return out;
}

bool PostDomTree::postdominates(int a, int b) const {
  for (;;) {
    if (a == b)
      return true;
    int up = ipdom[b];
    if (up == b)
      return false;
    b = up;
  }
}

// Cooper, Harvey and Kennedy's iterative dominator algorithm run on the
// reverse CFG. The augmented Entry -> Exit edge makes Exit the reverse
// root's successor of Entry, so ipdom(Entry) == Exit.
PostDomTree postdominators(const Cfg &cfg) {
  const int n = cfg.size();
  auto rev_succs = [&](int v) {
    std::vector<int> out = cfg.preds(v);
    if (v == Cfg::kExit)
      out.push_back(Cfg::kEntry);
    return out;
  };
  auto rev_preds = [&](int v) {
    std::vector<int> out = cfg.succs(v);
    if (v == Cfg::kEntry)
      out.push_back(Cfg::kExit);
    return out;
  };

  std::vector<int> post(n, -1);
  std::vector<int> order; // postorder
  std::vector<bool> seen(n, false);
  std::function<void(int)> dfs = [&](int v) {
    seen[v] = true;
    for (int w : rev_succs(v))
      if (!seen[w])
        dfs(w);
    post[v] = static_cast<int>(order.size());
    order.push_back(v);
  };
  dfs(Cfg::kExit);

  std::vector<int> idom(n, -1);
  idom[Cfg::kExit] = Cfg::kExit;
  auto intersect = [&](int a, int b) {
    while (a != b) {
      while (post[a] < post[b])
        a = idom[a];
      while (post[b] < post[a])
        b = idom[b];
    }
    return a;
  };

  bool changed = true;
  while (changed) {
    changed = false;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      int v = *it;
      if (v == Cfg::kExit)
        continue;
      int cur = -1;
      for (int p : rev_preds(v)) {
        if (idom[p] == -1)
          continue;
        cur = cur == -1 ? p : intersect(p, cur);
      }
      if (cur != idom[v]) {
        idom[v] = cur;
        changed = true;
      }
    }
  }
  // Unreachable nodes cannot occur in a structured CFG; park them at Exit.
  for (int &d : idom)
    if (d == -1)
      d = Cfg::kExit;
  return PostDomTree{std::move(idom)};
}

std::vector<ControlDep> control_dependences(const Cfg &cfg, const PostDomTree &pdt) {
  std::vector<CfgEdge> edges = cfg.edges();
  edges.push_back({Cfg::kEntry, Cfg::kExit, BranchTag::False});
  std::set<ControlDep> out;
  for (const CfgEdge &e : edges) {
    // A self-loop still counts: B does not *strictly* postdominate A.
    if (e.from != e.to && pdt.postdominates(e.to, e.from))
      continue;
    const int stop = pdt.ipdom[e.from];
    for (int r = e.to; r != stop; r = pdt.ipdom[r]) {
      out.insert({e.from, r, e.tag});
      if (r == Cfg::kExit)
        break;
    }
  }
  return {out.begin(), out.end()};
}

} // namespace slicekit
