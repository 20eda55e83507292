// Copyright 2026 The Unsplit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "unsplit/solver.h"

#include <map>
#include <vector>

#include "gtest/gtest.h"
#include "unsplit/error.h"
#include "unsplit/flow_ops.h"
#include "unsplit/instances.h"
#include "unsplit/verify.h"

namespace unsplit {
namespace {

std::vector<Rational> Load(const Instance& inst, const UnsplittableSolution& sol) {
  std::vector<Rational> load(inst.num_arcs(), Rational(0));
  for (const PathFlow& p : sol.paths) {
    for (ArcId a : p.arcs) load[a] += p.value;
  }
  return load;
}

TEST(DeriveSsufTest, AddsSuperSourceWithDummyArcs) {
  const GeneratedInstance g = GenerateRandom(7, RandomSpec{});
  const SsufDerivation d = DeriveSsuf(g.instance, g.flow);
  EXPECT_EQ(d.instance.num_vertices(), g.instance.num_vertices() + 1);
  EXPECT_EQ(d.original_arcs, g.instance.num_arcs());
  EXPECT_EQ(d.instance.balance(d.super_source), g.instance.TotalDemand());
  EXPECT_EQ(d.d_max, g.instance.MaxDemand());
  for (VertexId s : g.instance.Sources()) {
    const ArcId dummy = d.dummy_arc[s];
    ASSERT_NE(dummy, kNoArc);
    EXPECT_EQ(d.instance.tail(dummy), d.super_source);
    EXPECT_EQ(d.flow[dummy], g.instance.balance(s));
    EXPECT_EQ(d.instance.balance(s), 0);
  }
  EXPECT_TRUE(IsTransshipment(d.instance, d.flow));
}

TEST(DeriveSsufTest, AvoidsNameClash) {
  Instance inst;
  const VertexId s = inst.AddVertex("s*", 1);
  const VertexId t = inst.AddVertex("t", -1);
  inst.AddArc("st", s, t, 1);
  const SsufDerivation d = DeriveSsuf(inst, Flow(std::vector<Rational>{1}));
  EXPECT_NE(d.instance.vertex_name(d.super_source), "s*");
}

TEST(SolverTest, EveryVariantRespectsItsBound) {
  for (uint64_t seed = 1; seed <= 60; ++seed) {
    RandomSpec spec;
    spec.vertices = 8 + seed % 15;
    spec.sources = 1 + seed % 3;
    const GeneratedInstance g = GenerateRandom(seed, spec);
    const Rational d_max = g.instance.MaxDemand();
    for (Variant v : {Variant::kUpper, Variant::kLower, Variant::kReversed, Variant::kAuto}) {
      const SolveResult r = Solve(g.instance, g.flow, v);
      EXPECT_EQ(r.bound, v == Variant::kUpper || v == Variant::kLower ? d_max : r.bound);
      const std::vector<Rational> load = Load(g.instance, r.solution);
      for (ArcId a = 0; a < g.instance.num_arcs(); ++a) {
        if (r.direction == BoundDirection::kUpper) {
          EXPECT_LT(load[a], g.flow[a] + r.bound) << "seed " << seed;
        } else {
          EXPECT_GT(load[a], g.flow[a] - r.bound) << "seed " << seed;
        }
      }
      EXPECT_TRUE(CheckUnsplittable(g.instance, r.solution).passed());
    }
  }
}

TEST(SolverTest, ReversedVariantBoundsBySupply) {
  const GeneratedInstance g = GenerateRandom(11, RandomSpec{});
  const SolveResult r = SolveReversed(g.instance, g.flow);
  EXPECT_TRUE(r.reversed);
  EXPECT_EQ(r.bound, g.instance.MaxSupply());
  for (const PathFlow& p : r.solution.paths) {
    EXPECT_TRUE(g.instance.IsSource(p.source));
    EXPECT_TRUE(g.instance.IsSink(p.sink));
  }
}

TEST(SolverTest, AutoPicksSmallerTerminalValue) {
  Instance inst;
  const VertexId s = inst.AddVertex("s", 1);
  const VertexId a = inst.AddVertex("a");
  const VertexId t = inst.AddVertex("t", -1);
  inst.AddArc("sa", s, a, 1);
  inst.AddArc("at", a, t, 1);
  const VertexId big = inst.AddVertex("big", 4);
  const VertexId u1 = inst.AddVertex("u1", -2);
  const VertexId u2 = inst.AddVertex("u2", -2);
  inst.AddArc("bu1", big, u1, 2);
  inst.AddArc("bu2", big, u2, 2);
  const Flow flow(std::vector<Rational>{1, 1, 2, 2});
  EXPECT_FALSE(Solve(inst, flow, Variant::kAuto).reversed);
  EXPECT_EQ(Solve(inst, flow, Variant::kAuto).bound, 2);
}

TEST(SolverTest, SingleSourceVariantsAgreeOnGuarantee) {
  for (uint64_t seed = 1; seed <= 30; ++seed) {
    RandomSpec spec;
    spec.sources = 1;
    const GeneratedInstance g = GenerateRandom(seed, spec);
    const SolveResult classic = SolveDggSsuf(g.instance, g.flow);
    const SolveResult modified = SolveModifiedDgg(g.instance, g.flow);
    for (const SolveResult* r : {&classic, &modified}) {
      EXPECT_TRUE(CheckDggBound(g.instance, g.flow, r->solution, BoundDirection::kUpper)
                      .passed());
      EXPECT_EQ(r->solution.paths.size(), g.instance.Sinks().size());
    }
  }
}

TEST(SolverTest, CyclicInputFlowIsCancelledFirst) {
  Instance inst;
  const VertexId s = inst.AddVertex("s", 1);
  const VertexId a = inst.AddVertex("a");
  const VertexId b = inst.AddVertex("b");
  const VertexId t = inst.AddVertex("t", -1);
  inst.AddArc("sa", s, a, 1);
  inst.AddArc("ab", a, b, 1);
  inst.AddArc("ba", b, a, 1);
  inst.AddArc("at", a, t, 1);
  const SolveResult r =
      SolveModifiedDgg(inst, Flow(std::vector<Rational>{1, Rational(1, 2), Rational(1, 2), 1}));
  ASSERT_EQ(r.solution.paths.size(), 1u);
  EXPECT_EQ(r.solution.paths[0].arcs, (std::vector<ArcId>{0, 3}));
}

TEST(SolverTest, RejectsFlowViolatingBalances) {
  const GeneratedInstance g = GenerateRandom(5, RandomSpec{});
  Flow broken = g.flow;
  broken[0] += 1;
  try {
    SolveModifiedDgg(g.instance, broken);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotTransshipment);
  }
}

TEST(SolverTest, NoSinksGivesEmptySolution) {
  Instance inst;
  const VertexId a = inst.AddVertex("a");
  const VertexId b = inst.AddVertex("b");
  inst.AddArc("ab", a, b, 1);
  EXPECT_TRUE(SolveModifiedDgg(inst, Flow(1)).solution.paths.empty());
}

TEST(ReverseInstanceTest, FlipsArcsAndBalances) {
  const GeneratedInstance g = GenerateRandom(9, RandomSpec{});
  const Instance rev = ReverseInstance(g.instance);
  for (ArcId a = 0; a < g.instance.num_arcs(); ++a) {
    EXPECT_EQ(rev.tail(a), g.instance.head(a));
    EXPECT_EQ(rev.head(a), g.instance.tail(a));
  }
  for (VertexId v = 0; v < g.instance.num_vertices(); ++v) {
    EXPECT_EQ(rev.balance(v), -g.instance.balance(v));
  }
}

}  // namespace
}  // namespace unsplit
