//===- support.cpp - Shared test helpers and oracles ----------------------===//

#include "support.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace slicekit {

void PrintTo(const Program &p, std::ostream *os) { *os << "\n" << unparse(p, {true}); }

} // namespace slicekit

namespace slicekit::test {

std::string fixture_path(const std::string &name) {
  return std::string(SLICEKIT_FIXTURE_DIR) + "/" + name + ".mj";
}

std::string read_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Program load_fixture(const std::string &name) {
  return parse_normalized(read_file(fixture_path(name)));
}

const std::vector<std::string> &fixture_names() {
  static const std::vector<std::string> names = {"fig1", "fig3",  "fig6",
                                                 "fig9", "fig11", "fig13"};
  return names;
}

LabelSet labels(std::initializer_list<int> xs) {
  LabelSet s;
  for (int x : xs)
    s.insert(Label(x));
  return s;
}

std::string show(const LabelSet &s) {
  std::string out = "{";
  for (Label l : s) {
    if (out.size() > 1)
      out += ",";
    out += std::to_string(l.value);
  }
  return out + "}";
}

std::vector<std::string> texts(const Program &p, const LabelSet &ls) {
  std::vector<std::string> out;
  for (Label l : ls)
    if (const Stmt *s = find_stmt(p, l))
      out.push_back(statement_text(*s));
  return out;
}

std::vector<Label> executable_labels(const Program &p) {
  std::vector<Label> out;
  for_each_stmt(p.body, [&](const Stmt &s) { out.push_back(s.label); });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> variables(const Program &p) {
  std::vector<std::string> out;
  for (const auto &[name, info] : symbols(p))
    out.push_back(name);
  return out;
}

std::vector<std::string> scalar_variables(const Program &p) {
  std::vector<std::string> out;
  for (const auto &[name, info] : symbols(p))
    if (!info.is_array)
      out.push_back(name);
  return out;
}

std::int64_t uniform(Rng &rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

InputStream random_input(Rng &rng, int length, std::int64_t lo, std::int64_t hi) {
  InputStream in;
  for (int k = 0; k < length; ++k)
    in.values.push_back(uniform(rng, lo, hi));
  return in;
}

std::map<std::string, std::vector<std::int64_t>>
random_arrays(Rng &rng, const Program &p, std::int64_t lo, std::int64_t hi) {
  std::map<std::string, std::vector<std::int64_t>> out;
  for (const auto &[name, info] : symbols(p))
    if (info.is_array) {
      auto &cells = out[name];
      for (int k = 0; k < info.size; ++k)
        cells.push_back(uniform(rng, lo, hi));
    }
  return out;
}

//===----------------------------------------------------------------------===//
// Random loop-free programs
//===----------------------------------------------------------------------===//

namespace {

class ProgramGen {
public:
  ProgramGen(Rng &rng, int max_stmts, int max_reads)
      : rng_(rng), budget_(static_cast<int>(uniform(rng, 1, max_stmts))),
        reads_(max_reads) {}

  std::string run() {
    std::string out = "int x, y, z, b[3];\n";
    while (budget_ > 0)
      out += stmt(0, "");
    return out;
  }

private:
  const char *scalar() {
    static const char *names[] = {"x", "y", "z"};
    return names[uniform(rng_, 0, 2)];
  }

  std::string expr(int depth) {
    int pick = static_cast<int>(uniform(rng_, 0, depth >= 2 ? 2 : 4));
    switch (pick) {
    case 0:
      return scalar();
    case 1:
      return std::to_string(uniform(rng_, -2, 2));
    case 2:
      return "b[" + std::to_string(uniform(rng_, 0, 2)) + "]";
    default: {
      static const char *ops[] = {"+", "-", "*", "<", "==", ">"};
      return "(" + expr(depth + 1) + " " + ops[uniform(rng_, 0, 5)] + " " +
             expr(depth + 1) + ")";
    }
    }
  }

  std::string block(int depth, const std::string &indent) {
    std::string out = " {\n";
    int n = static_cast<int>(uniform(rng_, 1, 3));
    for (int k = 0; k < n && budget_ > 0; ++k)
      out += stmt(depth + 1, indent + "  ");
    return out + indent + "}";
  }

  std::string stmt(int depth, const std::string &indent) {
    --budget_;
    int pick = static_cast<int>(uniform(rng_, 0, 9));
    if (pick >= 8 && depth < 2 && budget_ >= 1) {
      std::string out = indent + "if (" + expr(0) + ")" + block(depth, indent);
      if (budget_ > 0 && uniform(rng_, 0, 1) == 1)
        out += " else" + block(depth, indent);
      return out + "\n";
    }
    if (pick >= 6 && reads_ > 0) {
      --reads_;
      return indent + scalar() + " = read();\n";
    }
    if (pick == 5)
      return indent + "print(" + expr(0) + ");\n";
    if (pick == 4)
      return indent + "b[" + std::to_string(uniform(rng_, 0, 2)) + "] = " + expr(0) +
             ";\n";
    return indent + scalar() + " = " + expr(0) + ";\n";
  }

  Rng &rng_;
  int budget_;
  int reads_;
};

} // namespace

std::string random_loop_free_program(Rng &rng, int max_stmts, int max_reads) {
  return ProgramGen(rng, max_stmts, max_reads).run();
}

std::vector<InputStream> all_inputs(int length, std::int64_t lo, std::int64_t hi) {
  std::vector<InputStream> out(1);
  for (int k = 0; k < length; ++k) {
    std::vector<InputStream> next;
    for (const InputStream &in : out)
      for (std::int64_t v = lo; v <= hi; ++v) {
        InputStream ext = in;
        ext.values.push_back(v);
        next.push_back(std::move(ext));
      }
    out = std::move(next);
  }
  return out;
}

int read_count(const Program &p) {
  int n = 0;
  for_each_stmt(p.body, [&](const Stmt &s) {
    if (std::holds_alternative<ReadStmt>(s.node))
      ++n;
  });
  return n;
}

//===----------------------------------------------------------------------===//
// Path-enumeration data dependences
//===----------------------------------------------------------------------===//

namespace {

struct Event {
  int label;
  std::set<std::string> uses, defs, kills;
};
using Path = std::vector<Event>;

void vars_of(const ExprPtr &e, std::set<std::string> &out) {
  if (!e)
    return;
  if (const auto *v = std::get_if<VarRef>(&e->node)) {
    out.insert(v->name);
  } else if (const auto *ix = std::get_if<IndexRef>(&e->node)) {
    out.insert(ix->array);
    vars_of(ix->index, out);
  } else if (const auto *u = std::get_if<UnaryExpr>(&e->node)) {
    vars_of(u->operand, out);
  } else if (const auto *b = std::get_if<BinaryExpr>(&e->node)) {
    vars_of(b->lhs, out);
    vars_of(b->rhs, out);
  }
}

void store(const LValue &lv, Event &ev) {
  ev.defs.insert(lv.name);
  if (lv.index)
    vars_of(lv.index, ev.uses);
  else
    ev.kills.insert(lv.name);
}

Event event_of(const Stmt &s) {
  Event ev{s.label.value, {}, {}, {}};
  if (const auto *d = std::get_if<DeclStmt>(&s.node)) {
    for (const Declarator &v : d->vars) {
      ev.defs.insert(v.name);
      ev.kills.insert(v.name);
    }
  } else if (const auto *a = std::get_if<Assign>(&s.node)) {
    store(a->target(), ev);
    vars_of(a->value, ev.uses);
  } else if (const auto *r = std::get_if<ReadStmt>(&s.node)) {
    store(r->target, ev);
    ev.uses.insert(kInputCursor);
    ev.defs.insert(kInputCursor);
    ev.kills.insert(kInputCursor);
  } else if (const auto *pr = std::get_if<PrintStmt>(&s.node)) {
    vars_of(pr->value, ev.uses);
  } else if (const auto *i = std::get_if<IfStmt>(&s.node)) {
    vars_of(i->cond, ev.uses);
  } else {
    throw std::logic_error("path oracle handles loop-free programs only");
  }
  return ev;
}

std::vector<Path> paths(const Block &b, std::size_t from, Path prefix) {
  if (from == b.size())
    return {std::move(prefix)};
  const Stmt &s = b[from];
  prefix.push_back(event_of(s));
  std::vector<Path> out;
  if (const auto *i = std::get_if<IfStmt>(&s.node)) {
    for (const Block *branch : {&i->then_block, &i->else_block})
      for (Path &mid : paths(*branch, 0, prefix))
        for (Path &full : paths(b, from + 1, std::move(mid)))
          out.push_back(std::move(full));
  } else {
    out = paths(b, from + 1, std::move(prefix));
  }
  return out;
}

} // namespace

std::set<std::tuple<int, int, std::string>> brute_force_data_edges(const Program &p) {
  Path start;
  for (const Stmt &d : p.decls)
    start.push_back(event_of(d));
  std::set<std::tuple<int, int, std::string>> out;
  for (const Path &path : paths(p.body, 0, start))
    for (std::size_t u = 0; u < path.size(); ++u)
      for (const std::string &v : path[u].uses)
        for (std::size_t d = u; d-- > 0;) {
          if (path[d].defs.count(v))
            out.insert({path[d].label, path[u].label, v});
          if (path[d].kills.count(v))
            break;
        }
  return out;
}

//===----------------------------------------------------------------------===//
// Control dependence from postdominator sets
//===----------------------------------------------------------------------===//

std::set<ControlDep> raw_control_dependences(const Cfg &cfg) {
  const int n = cfg.size();
  std::vector<std::vector<int>> succ(n);
  for (const CfgEdge &e : cfg.edges())
    succ[e.from].push_back(e.to);
  succ[Cfg::kEntry].push_back(Cfg::kExit);

  // pdom[x][y]: y postdominates x.
  std::vector<std::vector<bool>> pdom(n, std::vector<bool>(n, true));
  pdom[Cfg::kExit].assign(n, false);
  pdom[Cfg::kExit][Cfg::kExit] = true;
  for (bool changed = true; changed;) {
    changed = false;
    for (int x = 0; x < n; ++x) {
      if (x == Cfg::kExit)
        continue;
      std::vector<bool> next(n, true);
      for (int s : succ[x])
        for (int y = 0; y < n; ++y)
          next[y] = next[y] && pdom[s][y];
      next[x] = true;
      if (next != pdom[x]) {
        pdom[x] = std::move(next);
        changed = true;
      }
    }
  }

  std::set<ControlDep> out;
  auto consider = [&](int a, int b, BranchTag tag) {
    for (int y = 0; y < n; ++y)
      if (pdom[b][y] && !(pdom[a][y] && y != a))
        out.insert({a, y, tag});
  };
  for (const CfgEdge &e : cfg.edges())
    consider(e.from, e.to, e.tag);
  consider(Cfg::kEntry, Cfg::kExit, BranchTag::False);
  return out;
}

bool same_observations(const Program &original, const Program &candidate, Label at,
                       const VarSet &vars, const InputStream &in,
                       const ExecOptions &base) {
  ExecOptions opts = base;
  opts.record = false;
  opts.watch.clear();
  opts.watch[at] = vars;
  Trace want = try_execute(original, in, opts);
  Trace got = try_execute(candidate, in, opts);
  return observations_agree(want, got);
}

} // namespace slicekit::test
