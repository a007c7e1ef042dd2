//===- cli.cpp - Command-line front end -----------------------------------===//

#include "slicekit/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "slicekit/amorphous.hpp"
#include "slicekit/cohesion.hpp"
#include "slicekit/conditioned.hpp"
#include "slicekit/dot.hpp"
#include "slicekit/dynamic_slicer.hpp"
#include "slicekit/error.hpp"
#include "slicekit/parser.hpp"
#include "slicekit/printer.hpp"
#include "slicekit/static_slicer.hpp"

namespace slicekit {

using json = nlohmann::ordered_json;

namespace {

std::string trim(std::string s) {
  auto blank = [](unsigned char c) { return std::isspace(c) != 0; };
  s.erase(s.begin(), std::find_if_not(s.begin(), s.end(), blank));
  s.erase(std::find_if_not(s.rbegin(), s.rend(), blank).base(), s.end());
  return s;
}

std::int64_t parse_int(const std::string &text, const std::string &what) {
  std::size_t used = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(text, &used);
  } catch (const std::exception &) {
    used = 0;
  }
  if (text.empty() || used != text.size())
    throw std::invalid_argument("malformed " + what + ": '" + text + "'");
  return v;
}

struct Config {
  std::string file;
  std::string method;
  std::optional<int> at;
  std::vector<std::string> vars;
  std::optional<int> occurrence;
  std::vector<std::string> inputs;
  std::vector<std::string> fixes;
  std::vector<std::string> outputs;
  std::string format;
};

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string &msg) {
  if (!ok)
    throw UsageError(msg);
}

VarSet var_set(const std::vector<std::string> &names) {
  return VarSet(names.begin(), names.end());
}

json criterion_json(const SliceCriterion &c) {
  return std::visit(
      [](const auto &x) -> json {
        using T = std::decay_t<decltype(x)>;
        json j;
        auto inputs = [](const InputStream &in) { return json(in.values); };
        if constexpr (std::is_same_v<T, StaticCriterion>) {
          j["statement"] = x.statement.value;
          j["variables"] = x.variables;
        } else if constexpr (std::is_same_v<T, DynamicCriterion>) {
          j["statement"] = x.occurrence.statement.value;
          j["occurrence"] = x.occurrence.index;
          j["variables"] = x.variables;
          j["input"] = inputs(x.input);
        } else if constexpr (std::is_same_v<T, SimultaneousCriterion>) {
          j["statement"] = x.statement.value;
          j["variables"] = x.variables;
          j["inputs"] = json::array();
          for (const InputStream &in : x.inputs)
            j["inputs"].push_back(inputs(in));
        } else {
          j["statement"] = x.statement.value;
          j["variables"] = x.variables;
          j["fixed"] = json::object();
          for (const auto &[v, value] : x.fixed)
            j["fixed"][v] = value;
        }
        return j;
      },
      c);
}

std::vector<std::string> texts(const Program &p, const LabelSet &labels) {
  std::vector<std::string> out;
  for (Label l : labels)
    if (const Stmt *s = find_stmt(p, l))
      out.push_back(statement_text(*s));
  return out;
}

std::string label_line(const LabelSet &labels) {
  std::string out;
  for (Label l : labels) {
    if (!out.empty())
      out += ' ';
    out += std::to_string(l.value);
  }
  return out + "\n";
}

std::string ratio_text(const Ratio &r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

double ratio_value(const Ratio &r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

std::int64_t step_limit() {
  const char *env = std::getenv("SLICEKIT_STEP_LIMIT");
  if (!env || !*env)
    return kDefaultStepLimit;
  std::int64_t v = parse_int(env, "SLICEKIT_STEP_LIMIT");
  if (v <= 0)
    throw std::invalid_argument("SLICEKIT_STEP_LIMIT must be positive");
  return v;
}

void emit_slice(const Config &cfg, const Program &p, const Slice &s, std::ostream &out) {
  const std::string &fmt = cfg.format.empty() ? std::string("source") : cfg.format;
  if (fmt == "source") {
    out << unparse(s.projected);
  } else if (fmt == "labels") {
    out << label_line(s.labels);
  } else {
    json j;
    j["technique"] = to_string(s.technique);
    j["criterion"] = criterion_json(s.criterion);
    json labels = json::array();
    for (Label l : s.labels)
      labels.push_back(l.value);
    j["labels"] = labels;
    j["statement_texts"] = texts(p, s.labels);
    j["slice_size"] = s.labels.size();
    j["program_size"] = all_labels(p).size();
    if (s.technique == Technique::Simultaneous)
      j["fell_back"] = s.fell_back;
    if (s.technique == Technique::Dynamic || s.technique == Technique::Simultaneous)
      j["exhausted_reads"] = s.exhausted_reads;
    std::vector<std::string> notes = p.notes;
    notes.insert(notes.end(), s.notes.begin(), s.notes.end());
    j["discrepancy_notes"] = notes;
    out << j.dump(2) << "\n";
  }
}

int dispatch(const Config &cfg, std::ostream &out) {
  std::ifstream in(cfg.file);
  if (!in)
    throw UsageError("cannot open '" + cfg.file + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const Program p = parse_normalized(buf.str());
  const std::string &m = cfg.method;

  const bool graph = m == "pdg" || m == "cfg";
  if (graph)
    require(cfg.format.empty() || cfg.format == "dot" || cfg.format == "json",
            "--method " + m + " supports --format dot or json");
  else
    require(cfg.format != "dot", "--format dot needs --method pdg or cfg");
  require(!cfg.occurrence || m == "dynamic", "--occurrence only applies to --method dynamic");

  auto need_criterion = [&] {
    require(cfg.at.has_value(), "--method " + m + " needs --at");
    require(!cfg.vars.empty(), "--method " + m + " needs --var");
  };
  const std::int64_t limit = step_limit();

  if (m == "static" || m == "forward") {
    need_criterion();
    StaticCriterion c{Label{*cfg.at}, var_set(cfg.vars)};
    emit_slice(cfg, p, m == "static" ? backward_slice(p, c) : forward_slice(p, c), out);
  } else if (m == "dynamic") {
    need_criterion();
    require(cfg.inputs.size() <= 1, "--method dynamic takes one --input");
    DynamicCriterion c;
    c.input = cfg.inputs.empty() ? InputStream{} : parse_input(cfg.inputs.front());
    c.occurrence = Occurrence{Label{*cfg.at}, cfg.occurrence.value_or(1)};
    c.variables = var_set(cfg.vars);
    emit_slice(cfg, p, dynamic_slice(p, c, limit), out);
  } else if (m == "simultaneous") {
    need_criterion();
    require(!cfg.inputs.empty(), "--method simultaneous needs at least one --input");
    SimultaneousCriterion c;
    for (const std::string &text : cfg.inputs)
      c.inputs.push_back(parse_input(text));
    c.statement = Label{*cfg.at};
    c.variables = var_set(cfg.vars);
    emit_slice(cfg, p, simultaneous_dynamic_slice(p, c, limit), out);
  } else if (m == "conditioned") {
    need_criterion();
    ConditionedCriterion c;
    for (const std::string &f : cfg.fixes) {
      auto eq = f.find('=');
      require(eq != std::string::npos, "--fix expects name=value, got '" + f + "'");
      c.fixed[trim(f.substr(0, eq))] = parse_int(trim(f.substr(eq + 1)), "--fix value");
    }
    c.statement = Label{*cfg.at};
    c.variables = var_set(cfg.vars);
    emit_slice(cfg, p, conditioned_slice(p, c), out);
  } else if (m == "amorphous") {
    need_criterion();
    StaticCriterion c{Label{*cfg.at}, var_set(cfg.vars)};
    AmorphousSlice a = amorphous_slice(p, c);
    const LabelSet labels = all_labels(a.program);
    const std::string fmt = cfg.format.empty() ? "source" : cfg.format;
    if (fmt == "source") {
      out << unparse(a.program);
    } else if (fmt == "labels") {
      out << label_line(labels);
    } else {
      json j;
      j["technique"] = "amorphous";
      j["criterion"] = criterion_json(c);
      json ls = json::array();
      for (Label l : labels)
        ls.push_back(l.value);
      j["labels"] = ls;
      j["statement_texts"] = texts(a.program, labels);
      j["slice_size"] = labels.size();
      j["program_size"] = all_labels(p).size();
      j["statement_count"] = statement_count(a.program);
      j["static_statement_count"] = statement_count(a.syntax_preserving.projected);
      j["passes"] = a.log;
      j["source"] = unparse(a.program);
      j["discrepancy_notes"] = p.notes;
      out << j.dump(2) << "\n";
    }
  } else if (m == "cohesion") {
    require(!cfg.outputs.empty(), "--method cohesion needs --outputs");
    require(cfg.format.empty() || cfg.format == "json" || cfg.format == "source",
            "--method cohesion supports --format json");
    CohesionReport r = cohesion(p, var_set(cfg.outputs));
    if (cfg.format == "json") {
      json j;
      j["technique"] = "cohesion";
      j["length"] = r.length;
      json per = json::object();
      for (const auto &[v, sl] : r.slices) {
        json labels = json::array();
        for (Label l : sl)
          labels.push_back(l.value);
        per[v] = {{"at", r.slice_points.at(v).value},
                  {"slice_size", r.slice_sizes.at(v)},
                  {"labels", labels}};
      }
      j["slices"] = per;
      j["tightness"] = ratio_text(r.tightness);
      j["coverage"] = ratio_text(r.coverage);
      j["overlap"] = ratio_text(r.overlap);
      j["tightness_value"] = ratio_value(r.tightness);
      j["coverage_value"] = ratio_value(r.coverage);
      j["overlap_value"] = ratio_value(r.overlap);
      j["discrepancy_notes"] = p.notes;
      out << j.dump(2) << "\n";
    } else {
      out << "length: " << r.length << "\n";
      for (const auto &[v, size] : r.slice_sizes)
        out << "slice(" << v << " at " << r.slice_points.at(v) << "): " << size << "\n";
      auto line = [&](const char *name, const Ratio &x) {
        out << name << ": " << ratio_text(x) << " (" << std::fixed
            << std::setprecision(4) << ratio_value(x) << ")\n";
      };
      line("tightness", r.tightness);
      line("coverage", r.coverage);
      line("overlap", r.overlap);
    }
  } else if (m == "pdg") {
    const Pdg g = build_pdg(p);
    if (cfg.format == "json") {
      json j;
      j["nodes"] = json::array();
      for (Label l : g.nodes)
        j["nodes"].push_back({{"label", l.value}, {"text", g.text(l)}});
      j["edges"] = json::array();
      for (const PdgEdge &e : g.edges) {
        json je = {{"from", e.from.value},
                   {"to", e.to.value},
                   {"kind", e.kind == DepKind::Data ? "data" : "control"}};
        if (e.kind == DepKind::Data)
          je["var"] = e.var;
        else
          je["tag"] = to_string(e.tag);
        j["edges"].push_back(je);
      }
      out << j.dump(2) << "\n";
    } else {
      out << export_dot(g);
    }
  } else if (m == "cfg") {
    const Cfg g = build_cfg(p);
    if (cfg.format == "json") {
      json j;
      j["nodes"] = json::array();
      for (int n = 0; n < g.size(); ++n) {
        const CfgNode &node = g.node(n);
        j["nodes"].push_back({{"id", n},
                              {"label", node.label.value},
                              {"part", to_string(node.part)},
                              {"text", node.text}});
      }
      j["edges"] = json::array();
      for (const CfgEdge &e : g.edges())
        j["edges"].push_back({{"from", e.from}, {"to", e.to}, {"tag", to_string(e.tag)}});
      out << j.dump(2) << "\n";
    } else {
      out << export_dot(g);
    }
  } else if (m == "run") {
    require(cfg.inputs.size() <= 1, "--method run takes at most one --input");
    InputStream input = cfg.inputs.empty() ? InputStream{} : parse_input(cfg.inputs.front());
    ExecOptions opts;
    opts.step_limit = limit;
    opts.record = false;
    Trace t = execute(p, input, opts);
    if (cfg.format == "json") {
      json j;
      j["outputs"] = t.outputs;
      j["consumed"] = t.consumed;
      j["exhausted_reads"] = t.exhausted_reads;
      j["steps"] = t.executed;
      out << j.dump(2) << "\n";
    } else {
      for (std::int64_t v : t.outputs)
        out << v << "\n";
    }
  }
  return kExitOk;
}

} // namespace

InputStream parse_input(const std::string &text) {
  InputStream in;
  std::string token;
  std::stringstream ss(text);
  while (std::getline(ss, token, ',')) {
    token = trim(token);
    if (token.empty()) {
      if (text.find_first_not_of(" \t") == std::string::npos)
        continue;
      throw std::invalid_argument("empty value in input '" + text + "'");
    }
    std::string name;
    if (auto eq = token.find('='); eq != std::string::npos) {
      name = trim(token.substr(0, eq));
      token = trim(token.substr(eq + 1));
    }
    in.values.push_back(parse_int(token, "input value"));
    in.names.push_back(name);
  }
  return in;
}

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  Config cfg;
  CLI::App app{"Program slicing for MiniJ", "slicekit"};
  app.add_option("file", cfg.file, "MiniJ source file")->required();
  app.add_option("--method", cfg.method, "Analysis to run")
      ->required()
      ->check(CLI::IsMember({"static", "forward", "dynamic", "simultaneous",
                             "conditioned", "amorphous", "cohesion", "pdg", "cfg",
                             "run"}));
  app.add_option("--at", cfg.at, "Criterion statement label");
  app.add_option("--var", cfg.vars, "Criterion variable (repeatable)")
      ->allow_extra_args(false)
      ->delimiter(',');
  app.add_option("--occurrence", cfg.occurrence, "Occurrence index (dynamic)")
      ->check(CLI::PositiveNumber);
  app.add_option("--input", cfg.inputs, "Comma-separated read values (repeatable)")
      ->allow_extra_args(false);
  app.add_option("--fix", cfg.fixes, "Fixed variable name=value (repeatable)")
      ->allow_extra_args(false);
  app.add_option("--outputs", cfg.outputs, "Output variables for cohesion")
      ->delimiter(',');
  app.add_option("--format", cfg.format, "source, labels, dot or json")
      ->check(CLI::IsMember({"source", "labels", "dot", "json"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError &e) {
    err << "slicekit: " << e.what() << "\n" << "run with --help for usage\n";
    return kExitUsage;
  }

  try {
    return dispatch(cfg, out);
  } catch (const UsageError &e) {
    err << "slicekit: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument &e) {
    err << "slicekit: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError &e) {
    err << cfg.file << ":" << e.what() << "\n";
    return kExitParse;
  } catch (const AnalysisError &e) {
    err << "slicekit: " << e.what() << "\n";
    return kExitAnalysis;
  } catch (const RuntimeError &e) {
    err << "slicekit: runtime error: " << e.what() << "\n";
    return kExitAnalysis;
  }
}

} // namespace slicekit
