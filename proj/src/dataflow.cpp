//===- dataflow.cpp - Reaching definitions and liveness -------------------===//

#include "slicekit/dataflow.hpp"

namespace slicekit {

std::vector<int> ReachingDefs::reaching(int node, const std::string &var) const {
  std::vector<int> out;
  for (auto it = in[node].lower_bound({var, -1});
       it != in[node].end() && it->var == var; ++it)
    out.push_back(it->node);
  return out;
}

ReachingDefs reaching_definitions(const Cfg &cfg) {
  const int n = cfg.size();
  ReachingDefs rd;
  rd.in.assign(n, {});
  rd.out.assign(n, {});
  bool changed = true;
  while (changed) {
    changed = false;
    for (int v = 0; v < n; ++v) {
      DefSet in;
      for (int p : cfg.preds(v))
        in.insert(rd.out[p].begin(), rd.out[p].end());
      const DefUse &du = cfg.node(v).du;
      DefSet out;
      for (const Definition &d : in)
        if (!du.kills.count(d.var))
          out.insert(d);
      for (const std::string &var : du.defs)
        out.insert({var, v});
      if (in != rd.in[v] || out != rd.out[v]) {
        rd.in[v] = std::move(in);
        rd.out[v] = std::move(out);
        changed = true;
      }
    }
  }
  return rd;
}

Liveness live_variables(const Cfg &cfg,
                        const std::map<int, std::set<std::string>> &extra_uses) {
  const int n = cfg.size();
  Liveness lv;
  lv.in.assign(n, {});
  lv.out.assign(n, {});
  bool changed = true;
  while (changed) {
    changed = false;
    for (int v = n - 1; v >= 0; --v) {
      std::set<std::string> out;
      for (int s : cfg.succs(v))
        out.insert(lv.in[s].begin(), lv.in[s].end());
      const DefUse &du = cfg.node(v).du;
      std::set<std::string> in;
      for (const std::string &var : out)
        if (!du.kills.count(var))
          in.insert(var);
      in.insert(du.uses.begin(), du.uses.end());
      if (auto it = extra_uses.find(v); it != extra_uses.end())
        in.insert(it->second.begin(), it->second.end());
      if (in != lv.in[v] || out != lv.out[v]) {
        lv.in[v] = std::move(in);
        lv.out[v] = std::move(out);
        changed = true;
      }
    }
  }
  return lv;
}

} // namespace slicekit
