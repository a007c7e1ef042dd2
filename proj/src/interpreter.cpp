//===- interpreter.cpp - Instrumented MiniJ interpreter -------------------===//

#include "slicekit/interpreter.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <tuple>

namespace slicekit {

std::optional<std::int64_t> eval_binary(BinaryOp op, std::int64_t a, std::int64_t b) {
  using U = std::uint64_t;
  switch (op) {
  case BinaryOp::Add:
    return static_cast<std::int64_t>(U(a) + U(b));
  case BinaryOp::Sub:
    return static_cast<std::int64_t>(U(a) - U(b));
  case BinaryOp::Mul:
    return static_cast<std::int64_t>(U(a) * U(b));
  case BinaryOp::Div:
    if (b == 0)
      return std::nullopt;
    if (a == std::numeric_limits<std::int64_t>::min() && b == -1)
      return a;
    return a / b;
  case BinaryOp::Mod:
    if (b == 0)
      return std::nullopt;
    if (b == -1)
      return 0;
    return a % b;
  case BinaryOp::Lt:
    return a < b;
  case BinaryOp::Le:
    return a <= b;
  case BinaryOp::Gt:
    return a > b;
  case BinaryOp::Ge:
    return a >= b;
  case BinaryOp::Eq:
    return a == b;
  case BinaryOp::Ne:
    return a != b;
  case BinaryOp::And:
    return a != 0 && b != 0;
  case BinaryOp::Or:
    return a != 0 || b != 0;
  }
  return std::nullopt;
}

std::int64_t eval_unary(UnaryOp op, std::int64_t a) {
  switch (op) {
  case UnaryOp::Neg:
    return static_cast<std::int64_t>(0 - std::uint64_t(a));
  case UnaryOp::Not:
    return a == 0;
  default:
    throw std::logic_error("increment inside an expression: program not normalized");
  }
}

int Trace::find(Label label, int occurrence) const {
  for (std::size_t i = 0; i < steps.size(); ++i)
    if (steps[i].label == label && steps[i].part == Part::Main &&
        steps[i].occurrence == occurrence)
      return static_cast<int>(i);
  return -1;
}

int Trace::count(Label label) const {
  int n = 0;
  for (const Step &s : steps)
    if (s.label == label && s.part == Part::Main)
      ++n;
  return n;
}

bool observations_agree(const Trace &want, const Trace &got) {
  if (!want.fault)
    return want.observations == got.observations;
  if (got.observations.size() < want.observations.size())
    return false;
  return std::equal(want.observations.begin(), want.observations.end(),
                    got.observations.begin());
}

namespace {

class Machine {
public:
  Machine(const InputStream &in, const ExecOptions &opts) : in_(in), opts_(opts) {}

  void run(const Program &p) {
    for (const Stmt &s : p.decls)
      stmt(s, -1);
    block(p.body, -1);
  }

  Trace trace;

private:
  [[noreturn]] void fault(RuntimeErrorKind kind, const Step &st, const std::string &what) {
    throw RuntimeError(kind, st.label, st.occurrence,
                       what + " at statement " + std::to_string(st.label.value) +
                           " (occurrence " + std::to_string(st.occurrence) + ")");
  }

  Step begin(const Stmt &s, Part part, int index, int ctrl) {
    Step st;
    st.label = s.label;
    st.part = part;
    st.part_index = index;
    st.occurrence = ++occ_[{s.label.value, static_cast<int>(part), index}];
    st.control_parent = ctrl;
    if (++trace.executed > opts_.step_limit)
      fault(RuntimeErrorKind::StepLimitExceeded, st,
            "step limit of " + std::to_string(opts_.step_limit) + " exceeded");
    return st;
  }

  int finish(Step st) {
    int idx = -1;
    if (opts_.record) {
      idx = static_cast<int>(trace.steps.size());
      for (const Cell &c : st.defs)
        last_def_[c] = idx;
    }
    if (st.part == Part::Main) {
      auto w = opts_.watch.find(st.label);
      if (w != opts_.watch.end()) {
        Observation ob{st.label, st.occurrence, {}};
        for (const std::string &v : w->second) {
          if (auto a = arrays_.find(v); a != arrays_.end())
            ob.values[v] = a->second;
          else
            ob.values[v] = {scalars_[v]};
        }
        trace.observations.push_back(std::move(ob));
      }
    }
    if (opts_.record)
      trace.steps.push_back(std::move(st));
    return idx;
  }

  int def_of(const Cell &c) const {
    if (!opts_.record)
      return kUninitialized;
    if (auto it = last_def_.find(c); it != last_def_.end())
      return it->second;
    if (c.index >= 0)
      if (auto it = last_def_.find(Cell{c.var, -1}); it != last_def_.end())
        return it->second;
    return kUninitialized;
  }

  void use(Step &st, Cell c) {
    if (opts_.record) {
      int d = def_of(c);
      st.uses.push_back({std::move(c), d});
    }
  }

  std::int64_t element_index(Step &st, const std::string &array, const ExprPtr &index) {
    std::int64_t i = eval(st, index);
    const auto &cells = arrays_.at(array);
    if (i < 0 || i >= static_cast<std::int64_t>(cells.size()))
      fault(RuntimeErrorKind::IndexOutOfBounds, st,
            "index " + std::to_string(i) + " out of bounds for " + array + "[" +
                std::to_string(cells.size()) + "]");
    return i;
  }

  std::int64_t eval(Step &st, const ExprPtr &e) {
    return std::visit(
        [&](const auto &x) -> std::int64_t {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, IntLit>) {
            return x.value;
          } else if constexpr (std::is_same_v<T, VarRef>) {
            use(st, Cell{x.name, -1});
            return scalars_.at(x.name);
          } else if constexpr (std::is_same_v<T, IndexRef>) {
            std::int64_t i = element_index(st, x.array, x.index);
            use(st, Cell{x.array, i});
            return arrays_.at(x.array)[i];
          } else if constexpr (std::is_same_v<T, UnaryExpr>) {
            return eval_unary(x.op, eval(st, x.operand));
          } else {
            std::int64_t a = eval(st, x.lhs);
            if (x.op == BinaryOp::And && a == 0)
              return 0;
            if (x.op == BinaryOp::Or && a != 0)
              return 1;
            std::int64_t b = eval(st, x.rhs);
            auto r = eval_binary(x.op, a, b);
            if (!r)
              fault(RuntimeErrorKind::DivisionByZero, st, "division by zero");
            return *r;
          }
        },
        e->node);
  }

  void store(Step &st, const LValue &lv, std::int64_t index, std::int64_t v) {
    if (lv.is_element()) {
      arrays_.at(lv.name)[index] = v;
      st.defs.push_back({lv.name, index});
    } else {
      scalars_[lv.name] = v;
      st.defs.push_back({lv.name, -1});
    }
    st.value = v;
  }

  std::int64_t target_index(Step &st, const LValue &lv) {
    return lv.is_element() ? element_index(st, lv.name, lv.index) : -1;
  }

  void assign(Step &st, const Assign &a) {
    if (a.targets.size() != 1 || a.op != AssignOp::Set)
      throw std::logic_error("compound assignment: program not normalized");
    const LValue &lv = a.target();
    std::int64_t i = target_index(st, lv);
    std::int64_t v = eval(st, a.value);
    if (auto pin = opts_.pinned.find({st.label, st.part, st.part_index});
        pin != opts_.pinned.end())
      v = pin->second;
    store(st, lv, i, v);
  }

  bool predicate(const Stmt &s, const ExprPtr &cond, int ctrl, int &idx) {
    Step st = begin(s, Part::Main, 0, ctrl);
    bool taken = eval(st, cond) != 0;
    st.outcome = taken;
    idx = finish(std::move(st));
    return taken;
  }

  void block(const Block &b, int ctrl) {
    for (const Stmt &s : b)
      stmt(s, ctrl);
  }

  void stmt(const Stmt &s, int ctrl) {
    std::visit(
        [&](const auto &x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, DeclStmt>) {
            Step st = begin(s, Part::Main, 0, ctrl);
            for (const Declarator &d : x.vars) {
              if (d.size) {
                std::vector<std::int64_t> cells(*d.size, 0);
                if (auto init = opts_.initial_arrays.find(d.name);
                    init != opts_.initial_arrays.end()) {
                  if (init->second.size() != cells.size())
                    throw std::invalid_argument("initial contents for " + d.name +
                                                " have the wrong size");
                  cells = init->second;
                }
                arrays_[d.name] = std::move(cells);
              } else {
                scalars_[d.name] = 0;
              }
              st.defs.push_back({d.name, -1});
            }
            finish(std::move(st));
          } else if constexpr (std::is_same_v<T, Assign>) {
            Step st = begin(s, Part::Main, 0, ctrl);
            assign(st, x);
            finish(std::move(st));
          } else if constexpr (std::is_same_v<T, ReadStmt>) {
            Step st = begin(s, Part::Main, 0, ctrl);
            std::int64_t i = target_index(st, x.target);
            use(st, Cell{kInputCursor, -1});
            std::int64_t v = 0;
            if (cursor_ < in_.values.size()) {
              v = in_.values[cursor_++];
              ++trace.consumed;
            } else {
              ++trace.exhausted_reads;
            }
            if (auto pin = opts_.pinned.find({s.label}); pin != opts_.pinned.end())
              v = pin->second;
            store(st, x.target, i, v);
            st.defs.push_back({kInputCursor, -1});
            finish(std::move(st));
          } else if constexpr (std::is_same_v<T, PrintStmt>) {
            Step st = begin(s, Part::Main, 0, ctrl);
            std::int64_t v = eval(st, x.value);
            st.value = v;
            trace.outputs.push_back(v);
            finish(std::move(st));
          } else if constexpr (std::is_same_v<T, IfStmt>) {
            int idx;
            if (predicate(s, x.cond, ctrl, idx))
              block(x.then_block, idx);
            else
              block(x.else_block, idx);
          } else if constexpr (std::is_same_v<T, WhileStmt>) {
            int governing = ctrl;
            int idx;
            while (predicate(s, x.cond, governing, idx)) {
              block(x.body, idx);
              governing = idx;
            }
          } else {
            for (std::size_t k = 0; k < x.init.size(); ++k) {
              Step st = begin(s, Part::Init, static_cast<int>(k), ctrl);
              assign(st, x.init[k]);
              finish(std::move(st));
            }
            int governing = ctrl;
            int idx;
            while (predicate(s, x.cond, governing, idx)) {
              block(x.body, idx);
              for (std::size_t k = 0; k < x.update.size(); ++k) {
                Step st = begin(s, Part::Update, static_cast<int>(k), idx);
                assign(st, x.update[k]);
                finish(std::move(st));
              }
              governing = idx;
            }
          }
        },
        s.node);
  }

  const InputStream &in_;
  const ExecOptions &opts_;
  std::size_t cursor_ = 0;
  std::map<std::string, std::int64_t> scalars_;
  std::map<std::string, std::vector<std::int64_t>> arrays_;
  std::map<Cell, int> last_def_;
  std::map<std::tuple<int, int, int>, int> occ_;
};

} // namespace

Trace try_execute(const Program &p, const InputStream &in, const ExecOptions &opts) {
  Machine m(in, opts);
  try {
    m.run(p);
  } catch (const RuntimeError &e) {
    m.trace.fault = e;
  }
  return std::move(m.trace);
}

Trace execute(const Program &p, const InputStream &in, const ExecOptions &opts) {
  Trace t = try_execute(p, in, opts);
  if (t.fault)
    throw *t.fault;
  return t;
}

} // namespace slicekit
