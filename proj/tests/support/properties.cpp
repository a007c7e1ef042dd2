//===- properties.cpp - Randomized property checks ------------------------===//

#include "properties.hpp"

#include <algorithm>
#include <sstream>

#include "support.hpp"

namespace slicekit::test {

void PropertyResult::fail(std::string what) {
  ++violations;
  if (samples.size() < 5)
    samples.push_back(std::move(what));
}

std::string PropertyResult::summary() const {
  std::ostringstream os;
  os << checks << " checks, " << violations << " violations";
  for (const std::string &s : samples)
    os << "\n    " << s;
  return os.str();
}

namespace {

constexpr std::int64_t kLo = -5;
constexpr std::int64_t kHi = 12;
constexpr int kInputLength = 12;

/// Random input plus array contents for one run of a fixture.
ExecOptions random_run(Rng &rng, const Program &p, InputStream &in, std::int64_t lo,
                       std::int64_t hi) {
  in = random_input(rng, kInputLength, lo, hi);
  ExecOptions opts;
  opts.initial_arrays = random_arrays(rng, p, lo, hi);
  return opts;
}

std::string where(const std::string &fixture, Label at, const VarSet &vars) {
  std::string out = fixture + " (" + std::to_string(at.value) + ", {";
  for (const std::string &v : vars)
    out += (out.back() == '{' ? "" : ",") + v;
  return out + "})";
}

bool subset(const LabelSet &a, const LabelSet &b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

template <typename T> const T &pick(Rng &rng, const std::vector<T> &xs) {
  return xs[static_cast<std::size_t>(uniform(rng, 0, static_cast<std::int64_t>(xs.size()) - 1))];
}

/// A random fixing of one or two scalars that the program does not
/// contradict, together with its pin points.
std::map<std::string, std::int64_t> random_fixing(Rng &rng, const Program &p,
                                                  const Cfg &cfg) {
  const auto scalars = scalar_variables(p);
  for (int attempt = 0; attempt < 20; ++attempt) {
    std::map<std::string, std::int64_t> fixed;
    int n = static_cast<int>(uniform(rng, 1, 2));
    for (int k = 0; k < n; ++k)
      fixed[pick(rng, scalars)] = uniform(rng, -2, 2);
    try {
      fixing_points(p, cfg, fixed);
      return fixed;
    } catch (const AnalysisError &) {
    }
  }
  return {};
}

ExecOptions pinned_options(const Program &p, const Cfg &cfg,
                           const std::map<std::string, std::int64_t> &fixed) {
  ExecOptions opts;
  for (const auto &[var, point] : fixing_points(p, cfg, fixed))
    opts.pinned[point] = fixed.at(var);
  return opts;
}

} // namespace

PropertyResult static_soundness(std::uint32_t seed, int inputs) {
  PropertyResult r;
  Rng rng(seed);
  for (const std::string &name : fixture_names()) {
    const Program p = load_fixture(name);
    const Pdg g = build_pdg(p);
    for (Label at : executable_labels(p))
      for (const std::string &v : variables(p)) {
        const StaticCriterion c{at, {v}};
        const Slice s = backward_slice(g, p, c);
        for (int k = 0; k < inputs; ++k) {
          InputStream in;
          ExecOptions opts = random_run(rng, p, in, kLo, kHi);
          ++r.checks;
          if (!same_observations(p, s.projected, at, c.variables, in, opts)) {
            r.fail("static " + where(name, at, c.variables));
            break;
          }
        }
      }
  }
  return r;
}

PropertyResult conditioned_soundness(std::uint32_t seed, int inputs) {
  PropertyResult r;
  Rng rng(seed);
  for (const std::string &name : fixture_names()) {
    const Program p = load_fixture(name);
    const Cfg cfg = build_cfg(p);
    for (Label at : executable_labels(p))
      for (const std::string &v : header_vars(*find_stmt(p, at))) {
        const auto fixed = random_fixing(rng, p, cfg);
        if (fixed.empty())
          continue;
        const ConditionedCriterion c{fixed, at, {v}};
        const Slice s = conditioned_slice(p, c);
        ExecOptions pins = pinned_options(p, cfg, fixed);
        for (int k = 0; k < inputs; ++k) {
          InputStream in;
          ExecOptions opts = random_run(rng, p, in, kLo, kHi);
          opts.pinned = pins.pinned;
          ++r.checks;
          if (!same_observations(p, s.projected, at, c.variables, in, opts)) {
            r.fail("conditioned " + where(name, at, c.variables));
            break;
          }
        }
      }
  }
  return r;
}

PropertyResult simultaneous_soundness(std::uint32_t seed, int inputs) {
  PropertyResult r;
  Rng rng(seed);
  for (const std::string &name : fixture_names()) {
    const Program p = load_fixture(name);
    for (Label at : executable_labels(p))
      for (const std::string &v : header_vars(*find_stmt(p, at))) {
        SimultaneousCriterion c{{}, at, {v}};
        ExecOptions probe; // recording, so count() works
        for (int k = 0; k < inputs; ++k) {
          InputStream in = random_input(rng, kInputLength, kLo, kHi);
          Trace t = try_execute(p, in, probe);
          if (!t.fault && t.count(at) > 0)
            c.inputs.push_back(std::move(in));
        }
        if (c.inputs.empty())
          continue;
        const Slice s = simultaneous_dynamic_slice(p, c);
        if (s.fell_back)
          r.fail("simultaneous fell back " + where(name, at, c.variables));
        for (const InputStream &in : c.inputs) {
          ++r.checks;
          if (!same_observations(p, s.projected, at, c.variables, in)) {
            r.fail("simultaneous " + where(name, at, c.variables));
            break;
          }
        }
      }
  }
  return r;
}

PropertyResult slice_lattice(std::uint32_t seed, int criteria) {
  PropertyResult r;
  Rng rng(seed);
  for (const std::string &name : fixture_names()) {
    const Program p = load_fixture(name);
    const Pdg g = build_pdg(p);
    const auto stmts = executable_labels(p);
    const auto vars = variables(p);
    for (int n = 0; n < criteria; ++n) {
      const Label at = pick(rng, stmts);
      const VarSet vs{pick(rng, vars)};
      const std::string tag = where(name, at, vs);
      const LabelSet stat = backward_slice(g, p, {at, vs}).labels;

      // Dynamic, on one input where the statement runs.
      LabelSet dyn_union;
      std::vector<InputStream> ran;
      for (int attempt = 0; attempt < 10 && ran.size() < 3; ++attempt) {
        InputStream in = random_input(rng, kInputLength, kLo, kHi);
        ExecOptions opts;
        opts.record = true;
        Trace t = try_execute(p, in, opts);
        if (t.fault || t.count(at) == 0)
          continue;
        LabelSet executed = decl_labels(p);
        for (const Step &st : t.steps)
          executed.insert(st.label);
        const int occ = static_cast<int>(uniform(rng, 1, t.count(at)));
        const LabelSet dyn = dynamic_slice(p, {in, {at, occ}, vs}).labels;
        ++r.checks;
        if (!subset(dyn, executed))
          r.fail("dynamic not within executed " + tag);
        ++r.checks;
        if (!subset(dyn, stat))
          r.fail("dynamic not within static " + tag);
        dyn_union.merge(LabelSet(dynamic_slice(p, {in, {at, t.count(at)}, vs}).labels));
        ran.push_back(std::move(in));
      }
      if (!ran.empty()) {
        const Slice sds = simultaneous_dynamic_slice(p, {ran, at, vs});
        ++r.checks;
        if (!subset(dyn_union, sds.labels))
          r.fail("dynamic union not within simultaneous " + tag);
        ++r.checks;
        if (!subset(sds.labels, stat))
          r.fail("simultaneous not within static " + tag);
      }

      const auto fixed = random_fixing(rng, p, g.cfg);
      if (!fixed.empty()) {
        ++r.checks;
        if (!subset(conditioned_slice(p, {fixed, at, vs}).labels, stat))
          r.fail("conditioned not within static " + tag);
      }
    }
  }
  return r;
}

PropertyResult loop_free_oracle(std::uint32_t seed, int programs) {
  PropertyResult r;
  Rng rng(seed);
  for (int n = 0; n < programs; ++n) {
    const std::string src = random_loop_free_program(rng);
    const Program p = parse_normalized(src);
    const Pdg g = build_pdg(p);

    std::set<std::tuple<int, int, std::string>> got;
    for (const PdgEdge &e : g.edges)
      if (e.kind == DepKind::Data)
        got.insert({e.from.value, e.to.value, e.var});
    ++r.checks;
    if (got != brute_force_data_edges(p))
      r.fail("data edges differ for:\n" + src);

    const auto domain = all_inputs(read_count(p), -2, 2);
    for (Label at : executable_labels(p))
      for (const std::string &v : variables(p)) {
        const Slice s = backward_slice(g, p, {at, {v}});
        ++r.checks;
        for (const InputStream &in : domain)
          if (!same_observations(p, s.projected, at, {v}, in)) {
            r.fail("slice " + where("generated", at, {v}) + " breaks:\n" + src);
            break;
          }
      }
  }
  return r;
}

PropertyResult reachability_duality() {
  PropertyResult r;
  for (const std::string &name : fixture_names()) {
    const Pdg g = build_pdg(load_fixture(name));
    std::map<Label, LabelSet> back, fwd;
    for (Label l : g.nodes) {
      back[l] = backward_reachable(g, {l});
      fwd[l] = forward_reachable(g, {l});
    }
    for (Label u : g.nodes)
      for (Label v : g.nodes) {
        ++r.checks;
        if (back[v].count(u) != fwd[u].count(v))
          r.fail(name + ": " + std::to_string(u.value) + " / " + std::to_string(v.value));
      }
  }
  return r;
}

PropertyResult control_dependence_oracle(std::uint32_t seed, int programs) {
  PropertyResult r;
  auto check = [&](const Program &p, const std::string &what) {
    const Cfg cfg = build_cfg(p);
    const auto cds = control_dependences(cfg, postdominators(cfg));
    const std::set<ControlDep> got(cds.begin(), cds.end());
    ++r.checks;
    if (got != raw_control_dependences(cfg))
      r.fail("control dependences differ: " + what);
  };
  for (const std::string &name : fixture_names())
    check(load_fixture(name), name);
  Rng rng(seed);
  for (int n = 0; n < programs; ++n) {
    const std::string src = random_loop_free_program(rng);
    check(parse_normalized(src), src);
  }
  return r;
}

PropertyResult minimal_slice_sanity(std::uint32_t seed, int programs) {
  PropertyResult r;
  Rng rng(seed);
  for (int n = 0; n < programs; ++n) {
    const std::string src = random_loop_free_program(rng);
    const Program p = parse_normalized(src);
    const auto stmts = executable_labels(p);
    const Label at = pick(rng, stmts);
    const VarSet vs{pick(rng, scalar_variables(p))};
    const LabelSet slice = backward_slice(p, {at, vs}).labels;
    const auto domain = all_inputs(read_count(p), -2, 2);

    std::vector<Label> others;
    for (Label l : stmts)
      if (l != at)
        others.push_back(l);
    bool slice_preserving = false;
    LabelSet common(stmts.begin(), stmts.end());
    for (std::uint32_t mask = 0; mask < (1u << others.size()); ++mask) {
      LabelSet keep = decl_labels(p);
      keep.insert(at);
      for (std::size_t k = 0; k < others.size(); ++k)
        if (mask & (1u << k))
          keep.insert(others[k]);
      if (close_under_parents(p, keep) != keep)
        continue;
      const Program q = project(p, keep);
      const bool ok = std::all_of(domain.begin(), domain.end(), [&](const InputStream &in) {
        return same_observations(p, q, at, vs, in);
      });
      if (!ok)
        continue;
      if (keep == slice)
        slice_preserving = true;
      LabelSet kept;
      std::set_intersection(common.begin(), common.end(), keep.begin(), keep.end(),
                            std::inserter(kept, kept.end()));
      common = std::move(kept);
    }
    ++r.checks;
    if (!slice_preserving)
      r.fail("slice " + where("generated", at, vs) + " is not behavior preserving:\n" + src);
    ++r.checks;
    if (!subset(common, slice))
      r.fail("slice " + where("generated", at, vs) + " misses " + show(common) + ":\n" +
             src);
  }
  return r;
}

namespace {

/// Last observation of `vars` at `at`, or at program exit when the
/// candidate no longer contains `at`.
std::optional<Observation> final_values(const Program &q, Label at, const VarSet &vars,
                                        const InputStream &in, const ExecOptions &base,
                                        bool *faulted) {
  ExecOptions opts = base;
  opts.record = false;
  opts.watch.clear();
  Program run = q;
  Label watch = at;
  if (!find_stmt(q, at)) {
    watch = Label(max_label(q).value + 1);
    run.body.push_back(Stmt{watch, 0, PrintStmt{make_int(0)}});
  }
  opts.watch[watch] = vars;
  const Trace t = try_execute(run, in, opts);
  *faulted = t.fault.has_value();
  if (t.observations.empty())
    return std::nullopt;
  Observation last = t.observations.back();
  last.label = at;
  last.occurrence = 0;
  return last;
}

bool equivalent_on(const Program &p, const Program &q, Label at, const VarSet &vars,
                   const InputStream &in, const ExecOptions &opts) {
  bool faulted = false;
  const auto want = final_values(p, at, vars, in, opts, &faulted);
  if (faulted)
    return true; // only fault-free runs are compared
  bool q_faulted = false;
  const auto got = final_values(q, at, vars, in, opts, &q_faulted);
  if (!want)
    return true; // criterion never reached
  return !q_faulted && got == want;
}

} // namespace

PropertyResult amorphous_equivalence(std::uint32_t seed, int inputs) {
  PropertyResult r;
  Rng rng(seed);
  for (const std::string &name : fixture_names()) {
    const Program p = load_fixture(name);
    for (Label at : executable_labels(p))
      for (const std::string &v : variables(p)) {
        const StaticCriterion c{at, {v}};
        const AmorphousSlice a = amorphous_slice(p, c);
        ++r.checks;
        if (statement_count(a.program) > statement_count(a.syntax_preserving.projected))
          r.fail("amorphous larger than static " + where(name, at, c.variables));
        for (int k = 0; k < inputs; ++k) {
          InputStream in;
          ExecOptions opts = random_run(rng, p, in, -100, 100);
          ++r.checks;
          if (!equivalent_on(p, a.program, at, c.variables, in, opts)) {
            r.fail("amorphous " + where(name, at, c.variables) + "\n" + unparse(a.program));
            break;
          }
        }
      }
  }
  return r;
}

PropertyResult pass_safety(std::uint32_t seed, int inputs) {
  PropertyResult r;
  Rng rng(seed);
  for (const std::string &name : fixture_names()) {
    const Program p = load_fixture(name);
    for (Label at : executable_labels(p))
      for (const std::string &v : variables(p)) {
        const StaticCriterion c{at, {v}};
        const Program base = backward_slice(p, c).projected;
        for (PassKind k : default_pass_order()) {
          const Program q = apply_pass(k, base, c);
          if (q == base)
            continue;
          for (int n = 0; n < inputs; ++n) {
            InputStream in;
            ExecOptions opts = random_run(rng, p, in, -100, 100);
            ++r.checks;
            if (!equivalent_on(p, q, at, c.variables, in, opts)) {
              r.fail(std::string(to_string(k)) + " " + where(name, at, c.variables) +
                     "\n" + unparse(q));
              break;
            }
          }
        }
      }
  }
  return r;
}

} // namespace slicekit::test
