//===- interpreter_test.cpp - Instrumented execution ----------------------===//

#include <gtest/gtest.h>

#include <limits>

#include "support.hpp"

using namespace slicekit;
using namespace slicekit::test;

namespace {

InputStream input(std::initializer_list<std::int64_t> xs) { return InputStream{xs, {}}; }

std::vector<std::int64_t> outputs(const std::string &src, InputStream in = {}) {
  return execute(parse_normalized(src), in).outputs;
}

RuntimeErrorKind fault_of(const std::string &src, ExecOptions opts = {}) {
  try {
    execute(parse_normalized(src), {}, opts);
  } catch (const RuntimeError &e) {
    return e.kind();
  }
  ADD_FAILURE() << "no fault";
  return RuntimeErrorKind::StepLimitExceeded;
}

} // namespace

TEST(Interpreter, FigureOneSumAndProduct) {
  EXPECT_EQ(execute(load_fixture("fig1"), input({3})).outputs,
            (std::vector<std::int64_t>{6, 6}));
  EXPECT_EQ(execute(load_fixture("fig1"), input({5})).outputs,
            (std::vector<std::int64_t>{15, 120}));
}

TEST(Interpreter, FigureSixParity) {
  EXPECT_EQ(execute(load_fixture("fig6"), input({2})).outputs, std::vector<std::int64_t>{17});
  EXPECT_EQ(execute(load_fixture("fig6"), input({3})).outputs, std::vector<std::int64_t>{18});
}

TEST(Interpreter, FigureThirteenWithArrayContents) {
  ExecOptions opts;
  std::vector<std::int64_t> a(25);
  for (int k = 0; k < 25; ++k)
    a[k] = k * 3 % 17;
  opts.initial_arrays["a"] = a;
  opts.watch[Label(5)] = {"biggest", "average", "sum"};
  const Trace t = execute(load_fixture("fig13"), {}, opts);
  ASSERT_EQ(t.observations.size(), 1u);
  EXPECT_EQ(t.observations[0].values.at("biggest"), std::vector<std::int64_t>{16});
  EXPECT_EQ(t.observations[0].values.at("sum"), std::vector<std::int64_t>{a[24]});
  EXPECT_EQ(t.observations[0].values.at("average"), std::vector<std::int64_t>{a[24] / 25});
}

TEST(Interpreter, InitialArraysMustMatchTheDeclaredSize) {
  ExecOptions opts;
  opts.initial_arrays["a"] = {1, 2};
  EXPECT_THROW(execute(load_fixture("fig13"), {}, opts), std::invalid_argument);
}

TEST(Interpreter, Arithmetic) {
  EXPECT_EQ(outputs("int x; print(-7 / 2); print(-7 mod 2); print(7 % -2);"),
            (std::vector<std::int64_t>{-3, -1, 1}));
  EXPECT_EQ(outputs("int x; x = 4611686018427387904; print(x * 2);"),
            std::vector<std::int64_t>{std::numeric_limits<std::int64_t>::min()});
  EXPECT_EQ(outputs("int x; print(0 && 1 / 0); print(1 || 1 / 0); print(!3 == 0);"),
            (std::vector<std::int64_t>{0, 1, 1}));
}

TEST(Interpreter, Faults) {
  EXPECT_EQ(fault_of("int x; x = 1 / x;"), RuntimeErrorKind::DivisionByZero);
  EXPECT_EQ(fault_of("int a[2]; a[2] = 1;"), RuntimeErrorKind::IndexOutOfBounds);
  EXPECT_EQ(fault_of("int a[2], x; x = a[-1];"), RuntimeErrorKind::IndexOutOfBounds);
  ExecOptions small;
  small.step_limit = 100;
  EXPECT_EQ(fault_of("int x; while (1) { x = x + 1; }", small),
            RuntimeErrorKind::StepLimitExceeded);
}

TEST(Interpreter, TryExecuteKeepsThePartialTrace) {
  const Trace t = try_execute(parse_normalized("int x; print(1); x = 1 / x; print(2);"),
                              {});
  ASSERT_TRUE(t.fault.has_value());
  EXPECT_EQ(t.fault->kind(), RuntimeErrorKind::DivisionByZero);
  EXPECT_EQ(t.fault->label(), Label(3));
  EXPECT_EQ(t.outputs, std::vector<std::int64_t>{1});
}

TEST(Interpreter, ReadsPastTheEndReturnZero) {
  const Trace t = execute(load_fixture("fig1"), {});
  EXPECT_EQ(t.exhausted_reads, 1);
  EXPECT_EQ(t.outputs, (std::vector<std::int64_t>{0, 1}));
  const Trace u = execute(load_fixture("fig9"), input({0, 0, 2, 2}));
  EXPECT_EQ(u.consumed, 4);
  EXPECT_EQ(u.exhausted_reads, 1);
}

TEST(Interpreter, StepsLinkUsesToElementDefinitions) {
  const Program p = parse_normalized("int a[3], x; a[1] = 5; a[2] = 7; x = a[2];");
  const Trace t = execute(p, {});
  const int use = t.find(Label(4), 1);
  ASSERT_GE(use, 0);
  bool linked = false;
  for (const CellUse &u : t.steps[use].uses)
    if (u.cell == Cell{"a", 2}) {
      EXPECT_EQ(u.def_step, t.find(Label(3), 1));
      linked = true;
    }
  EXPECT_TRUE(linked);
  EXPECT_EQ(t.steps[use].value, 7);
}

TEST(Interpreter, ControlParentsAndOccurrences) {
  const Trace t = execute(load_fixture("fig6"), input({2}));
  EXPECT_EQ(t.count(Label(4)), 3); // two iterations plus the exit test
  EXPECT_EQ(t.count(Label(6)), 1);
  EXPECT_EQ(t.count(Label(7)), 1);
  const Step &s17 = t.steps[t.find(Label(6), 1)];
  ASSERT_GE(s17.control_parent, 0);
  const Step &parent = t.steps[s17.control_parent];
  EXPECT_EQ(parent.label, Label(5));
  EXPECT_EQ(parent.outcome, true);
  EXPECT_EQ(t.steps[parent.control_parent].label, Label(4));
  EXPECT_EQ(t.steps[t.find(Label(2), 1)].control_parent, -1);
}

TEST(Interpreter, PinnedReadStillConsumesInput) {
  ExecOptions opts;
  opts.pinned[PinPoint{Label(2)}] = 1;
  opts.watch[Label(14)] = {"sum"};
  const Trace t = execute(load_fixture("fig11"), input({-5, 4}), opts);
  EXPECT_EQ(t.outputs, (std::vector<std::int64_t>{4, 4}));
  EXPECT_EQ(t.consumed, 2);
}

TEST(Interpreter, PinsForInitParts) {
  ExecOptions opts;
  opts.pinned[PinPoint{Label(5), Part::Init, 0}] = 3;
  const Trace t = execute(load_fixture("fig1"), input({4}), opts);
  EXPECT_EQ(t.outputs, (std::vector<std::int64_t>{7, 12}));
}

TEST(Interpreter, Deterministic) {
  for (const std::string &name : fixture_names()) {
    const Program p = load_fixture(name);
    const InputStream in = input({3, 1, 4, 1, 5, 9, 2, 6});
    const Trace a = execute(p, in), b = execute(p, in);
    ASSERT_EQ(a.steps.size(), b.steps.size()) << name;
    EXPECT_EQ(a.outputs, b.outputs) << name;
    for (std::size_t k = 0; k < a.steps.size(); ++k) {
      EXPECT_EQ(a.steps[k].label, b.steps[k].label);
      EXPECT_EQ(a.steps[k].value, b.steps[k].value);
      EXPECT_EQ(a.steps[k].control_parent, b.steps[k].control_parent);
    }
  }
}

TEST(Interpreter, ObservationsAgreePrefixRule) {
  Trace want, got;
  want.observations = {{Label(2), 1, {{"x", {1}}}}};
  got.observations = {{Label(2), 1, {{"x", {1}}}}, {Label(2), 2, {{"x", {2}}}}};
  EXPECT_FALSE(observations_agree(want, got));
  want.fault = RuntimeError(RuntimeErrorKind::DivisionByZero, Label(3), 1, "boom");
  EXPECT_TRUE(observations_agree(want, got));
  got.observations[0].values["x"] = {9};
  EXPECT_FALSE(observations_agree(want, got));
}
