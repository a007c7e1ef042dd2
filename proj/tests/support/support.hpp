//===- support.hpp - Shared test helpers and oracles ------------*- C++ -*-===//
//
// Everything here is independent of the production analyses it checks:
// the path-enumeration data-dependence oracle walks the AST itself, and the
// control-dependence oracle computes postdominator *sets* directly.
//
//===----------------------------------------------------------------------===//

#pragma once

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "slicekit/slicekit.hpp"

namespace slicekit {

/// GTest printer hook.
void PrintTo(const Program &p, std::ostream *os);

} // namespace slicekit

namespace slicekit::test {

std::string fixture_path(const std::string &name);
std::string read_file(const std::string &path);
Program load_fixture(const std::string &name);

/// fig1, fig3, fig6, fig9, fig11, fig13.
const std::vector<std::string> &fixture_names();

LabelSet labels(std::initializer_list<int> xs);
std::string show(const LabelSet &s);

/// Statement texts of `ls` in label order.
std::vector<std::string> texts(const Program &p, const LabelSet &ls);

/// Non-declaration labels.
std::vector<Label> executable_labels(const Program &p);
std::vector<std::string> variables(const Program &p);
std::vector<std::string> scalar_variables(const Program &p);

/// Deterministic generator shared by all property tests.
using Rng = std::mt19937;

std::int64_t uniform(Rng &rng, std::int64_t lo, std::int64_t hi);
InputStream random_input(Rng &rng, int length, std::int64_t lo, std::int64_t hi);
/// Random contents for every declared array.
std::map<std::string, std::vector<std::int64_t>>
random_arrays(Rng &rng, const Program &p, std::int64_t lo, std::int64_t hi);

/// Loop-free program with at most `max_stmts` labeled body statements and
/// at most `max_reads` read() calls, over scalars x, y, z and array b[3].
std::string random_loop_free_program(Rng &rng, int max_stmts = 8, int max_reads = 3);

/// Every input stream of `length` values drawn from [lo, hi].
std::vector<InputStream> all_inputs(int length, std::int64_t lo, std::int64_t hi);
int read_count(const Program &p);

/// (def label, use label, variable) triples found by enumerating every path
/// of a loop-free program.
std::set<std::tuple<int, int, std::string>> brute_force_data_edges(const Program &p);

/// Control dependences straight from the definition: Y depends on A via
/// edge A->B when Y postdominates B but does not strictly postdominate A.
std::set<ControlDep> raw_control_dependences(const Cfg &cfg);

/// Runs both programs watching `vars` at `at` and compares the observation
/// sequences (prefix rule when the original faults).
bool same_observations(const Program &original, const Program &candidate, Label at,
                       const VarSet &vars, const InputStream &in,
                       const ExecOptions &base = {});

} // namespace slicekit::test
