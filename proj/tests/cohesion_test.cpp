//===- cohesion_test.cpp - Slice-based cohesion metrics -------------------===//

#include <gtest/gtest.h>

#include "support.hpp"

using namespace slicekit;
using namespace slicekit::test;

namespace {

const char *kIndependent = "int a, b;\n"
                           "a = 1;\n"
                           "b = 2;\n"
                           "a = a + 3;\n"
                           "b = b * 4;\n"
                           "print(a);\n"
                           "print(b);\n";

void expect_bounded(const CohesionReport &r) {
  const Ratio zero(0), one(1);
  for (const Ratio &x : {r.tightness, r.coverage, r.overlap}) {
    EXPECT_GE(x, zero);
    EXPECT_LE(x, one);
  }
  EXPECT_LE(r.tightness, r.coverage);
}

} // namespace

TEST(Cohesion, FigureOne) {
  const Program p = load_fixture("fig1");
  const CohesionReport r = cohesion(p, {"sum", "product"});
  EXPECT_EQ(r.length, 9);
  EXPECT_EQ(r.slice_points.at("sum"), Label(8));
  EXPECT_EQ(r.slice_points.at("product"), Label(9));
  EXPECT_EQ(r.slices.at("sum"), labels({1, 2, 4, 5, 6, 8}));
  EXPECT_EQ(r.slices.at("product"), labels({1, 2, 3, 5, 7, 9}));
  EXPECT_EQ(r.intersection, labels({1, 2, 5}));
  EXPECT_EQ(r.tightness, Ratio(3, 9));
  EXPECT_EQ(r.coverage, Ratio(2, 3));
  EXPECT_EQ(r.overlap, Ratio(1, 2));
  expect_bounded(r);
}

TEST(Cohesion, SingleOutputIsDegenerate) {
  for (const std::string &v : {"sum", "product"}) {
    const CohesionReport r = cohesion(load_fixture("fig1"), {v});
    EXPECT_EQ(r.overlap, Ratio(1));
    EXPECT_EQ(r.tightness, r.coverage);
  }
}

TEST(Cohesion, IndependentComputationsOverlapLess) {
  const CohesionReport r = cohesion(parse_normalized(kIndependent), {"a", "b"});
  EXPECT_EQ(r.slices.at("a"), labels({1, 2, 4, 6}));
  EXPECT_EQ(r.slices.at("b"), labels({1, 3, 5, 7}));
  EXPECT_EQ(r.intersection, labels({1}));
  EXPECT_EQ(r.tightness, Ratio(1, 7));
  EXPECT_EQ(r.coverage, Ratio(4, 7));
  EXPECT_EQ(r.overlap, Ratio(1, 4));
  EXPECT_LT(r.overlap, cohesion(load_fixture("fig1"), {"sum", "product"}).overlap);
}

TEST(Cohesion, InvariantUnderIndependentReordering) {
  const Program a = load_fixture("fig1");
  std::string src = read_file(fixture_path("fig1"));
  const auto swap_at = src.find("product = 1;\nsum = 0;");
  ASSERT_NE(swap_at, std::string::npos);
  src.replace(swap_at, 21, "sum = 0;\nproduct = 1;");
  const CohesionReport x = cohesion(a, {"sum", "product"});
  const CohesionReport y = cohesion(parse_normalized(src), {"sum", "product"});
  EXPECT_EQ(x.tightness, y.tightness);
  EXPECT_EQ(x.coverage, y.coverage);
  EXPECT_EQ(x.overlap, y.overlap);
  EXPECT_EQ(x.slice_sizes, y.slice_sizes);
}

TEST(Cohesion, AddingAnOutputNeverRaisesTightness) {
  const Program p = load_fixture("fig9");
  const std::vector<std::string> outs = {"sum", "prod", "psum", "nsum", "i"};
  VarSet sofar;
  Ratio last(1);
  for (const std::string &v : outs) {
    sofar.insert(v);
    const CohesionReport r = cohesion(p, sofar);
    EXPECT_LE(r.tightness, last) << v;
    expect_bounded(r);
    last = r.tightness;
  }
}

TEST(Cohesion, Errors) {
  const Program p = parse_normalized("int x, y; y = 1; print(y);");
  try {
    cohesion(p, {"x"});
    FAIL();
  } catch (const AnalysisError &e) {
    EXPECT_EQ(e.kind(), AnalysisErrorKind::NoDefinition);
  }
  try {
    cohesion(p, {"nope"});
    FAIL();
  } catch (const AnalysisError &e) {
    EXPECT_EQ(e.kind(), AnalysisErrorKind::InvalidVariable);
  }
  EXPECT_THROW(cohesion(p, {}), AnalysisError);
}

TEST(Cohesion, LastReference) {
  EXPECT_EQ(last_reference(load_fixture("fig9"), "sum"), Label(35));
  EXPECT_EQ(last_reference(load_fixture("fig13"), "biggest"), Label(4));
}
