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

#include "unsplit/solver_state.h"

#include <map>
#include <set>
#include <variant>
#include <vector>

#include "gtest/gtest.h"
#include "unsplit/error.h"
#include "unsplit/flow_ops.h"
#include "unsplit/instances.h"
#include "unsplit/solver.h"

namespace unsplit {
namespace {

// r -> s splits over a and b, both joining at t.
SolverState Diamond() {
  Instance n;
  const VertexId r = n.AddVertex("r", 2);
  const VertexId s = n.AddVertex("s");
  const VertexId a = n.AddVertex("a");
  const VertexId b = n.AddVertex("b");
  const VertexId t = n.AddVertex("t", -2);
  n.AddArc("rs", r, s, 2);
  n.AddArc("sa", s, a, 1);
  n.AddArc("sb", s, b, 1);
  n.AddArc("at", a, t, 1);
  n.AddArc("bt", b, t, 1);
  SolverOptions options;
  options.check_invariants = true;
  return SolverState(n, Flow(std::vector<Rational>{2, 1, 1, 1, 1}), r,
                     CycleRule::kNiceOnly, options);
}

// Two sinks fed crosswise by a and b.
SolverState Crossed() {
  Instance n;
  const VertexId r = n.AddVertex("r", 3);
  const VertexId s = n.AddVertex("s");
  const VertexId a = n.AddVertex("a");
  const VertexId b = n.AddVertex("b");
  const VertexId t1 = n.AddVertex("t1", Rational(-3, 2));
  const VertexId t2 = n.AddVertex("t2", Rational(-3, 2));
  n.AddArc("rs", r, s, 3);
  n.AddArc("sa", s, a, 2);
  n.AddArc("sb", s, b, 2);
  n.AddArc("at1", a, t1, 1);
  n.AddArc("bt1", b, t1, 1);
  n.AddArc("at2", a, t2, 1);
  n.AddArc("bt2", b, t2, 1);
  const Rational half(1, 2);
  Flow flow(std::vector<Rational>{3, 3 * half, 3 * half, 1, half, half, 1});
  SolverOptions options;
  options.check_invariants = true;
  return SolverState(n, flow, r, CycleRule::kNiceOnly, options);
}

bool IsClosedWalk(const Instance& n, const NiceCycle& cycle) {
  if (cycle.steps.empty()) return false;
  auto from = [&](const CycleStep& s) { return s.forward ? n.tail(s.arc) : n.head(s.arc); };
  auto to = [&](const CycleStep& s) { return s.forward ? n.head(s.arc) : n.tail(s.arc); };
  for (size_t i = 0; i < cycle.steps.size(); ++i) {
    if (to(cycle.steps[i]) != from(cycle.steps[(i + 1) % cycle.steps.size()])) return false;
  }
  return true;
}

TEST(SolverStateTest, LabelsDiamond) {
  SolverState st = Diamond();
  st.RunPreliminaryPhase();
  st.Label();
  const Instance& n = st.network();
  EXPECT_FALSE(st.singular(*n.FindArc("rs")));
  for (const char* name : {"sa", "sb", "at", "bt"}) {
    EXPECT_TRUE(st.singular(*n.FindArc(name))) << name;
  }
  EXPECT_FALSE(st.funnel(*n.FindVertex("s")));
  EXPECT_TRUE(st.funnel(*n.FindVertex("a")));
}

TEST(SolverStateTest, DiamondCycleAndAmount) {
  SolverState st = Diamond();
  st.RunPreliminaryPhase();
  st.Label();
  const Instance& n = st.network();
  EXPECT_EQ(st.ChooseStart(), *n.FindVertex("s"));
  const SearchResult found = st.FindStructure();
  ASSERT_TRUE(std::holds_alternative<NiceCycle>(found));
  const NiceCycle& cycle = std::get<NiceCycle>(found);
  EXPECT_TRUE(IsClosedWalk(n, cycle));
  EXPECT_EQ(cycle.steps.size(), 4u);
  EXPECT_EQ(st.AugmentationAmount(cycle), 1);
}

TEST(SolverStateTest, DiamondRunsToASinglePath) {
  SolverState st = Diamond();
  st.Run();
  EXPECT_TRUE(st.Done());
  ASSERT_EQ(st.subsinks().size(), 1u);
  EXPECT_EQ(st.subsinks()[0].demand, 2);
  EXPECT_TRUE(st.subsinks()[0].delivered);
  EXPECT_EQ(st.DeliveredVia(0), *st.network().FindVertex("s"));
  EXPECT_GT(st.invariant_checks(), 0);
}

TEST(SolverStateTest, CrossedSinksStayWhole) {
  SolverState st = Crossed();
  st.RunPreliminaryPhase();
  st.Label();
  const SearchResult found = st.FindStructure();
  ASSERT_TRUE(std::holds_alternative<NiceCycle>(found));
  const NiceCycle& cycle = std::get<NiceCycle>(found);
  EXPECT_TRUE(IsClosedWalk(st.network(), cycle));
  EXPECT_EQ(st.AugmentationAmount(cycle), 1);
  st.Run();
  ASSERT_EQ(st.subsinks().size(), 2u);
  for (const SubSink& sub : st.subsinks()) {
    EXPECT_EQ(sub.demand, Rational(3, 2));
    EXPECT_TRUE(sub.delivered);
  }
}

TEST(SolverStateTest, RejectsSecondSourceAndCycles) {
  Instance two;
  const VertexId r = two.AddVertex("r", 1);
  const VertexId q = two.AddVertex("q", 1);
  const VertexId t = two.AddVertex("t", -2);
  two.AddArc("rt", r, t, 1);
  two.AddArc("qt", q, t, 1);
  EXPECT_THROW(SolverState(two, Flow(std::vector<Rational>{1, 1}), r, CycleRule::kNiceOnly),
               Error);

  Instance loop;
  const VertexId s = loop.AddVertex("s", 1);
  const VertexId a = loop.AddVertex("a");
  const VertexId b = loop.AddVertex("b");
  const VertexId u = loop.AddVertex("u", -1);
  loop.AddArc("sa", s, a, 1);
  loop.AddArc("ab", a, b, 1);
  loop.AddArc("ba", b, a, 1);
  loop.AddArc("au", a, u, 1);
  EXPECT_THROW(SolverState(loop, Flow(std::vector<Rational>{1, 1, 1, 1}), s,
                           CycleRule::kNiceOnly),
               Error);
}

// Every structure found on random runs is either a closed alternating walk
// with positive augmentation or an in-tree rooted at a funnel vertex.
TEST(SolverStateTest, StructuresAreWellFormedOnRandomRuns) {
  int cycles = 0, digraphs = 0;
  for (uint64_t seed = 1; seed <= 80; ++seed) {
    const GeneratedInstance g = GenerateRandom(seed, RandomSpec{});
    const SsufDerivation d = DeriveSsuf(g.instance, CancelCycles(g.instance, g.flow));
    for (BoundDirection direction : {BoundDirection::kUpper, BoundDirection::kLower}) {
      SolverOptions options;
      options.direction = direction;
      options.check_invariants = true;
      SolverState st(d.instance, d.flow, d.super_source, CycleRule::kNiceOnly, options);
      st.RunPreliminaryPhase();
      while (!st.Done()) {
        st.Label();
        const SearchResult found = st.FindStructure(st.ChooseStart());
        if (const auto* cycle = std::get_if<NiceCycle>(&found)) {
          ++cycles;
          EXPECT_TRUE(IsClosedWalk(d.instance, *cycle));
          EXPECT_GT(st.AugmentationAmount(*cycle), 0);
        } else {
          ++digraphs;
          const SingularDigraph& tree = std::get<SingularDigraph>(found);
          const std::set<VertexId> inside(tree.vertices.begin(), tree.vertices.end());
          EXPECT_EQ(d.instance.head(tree.entry_arc), tree.root);
          std::map<VertexId, int> out;
          for (ArcId a : tree.arcs) {
            EXPECT_TRUE(st.singular(a));
            EXPECT_TRUE(inside.count(d.instance.head(a)));
            ++out[d.instance.tail(a)];
          }
          for (const auto& [v, count] : out) EXPECT_EQ(count, 1);
        }
        st.RunIteration();
      }
      for (const SubSink& sub : st.subsinks()) EXPECT_TRUE(sub.delivered);
    }
  }
  EXPECT_GT(cycles, 0);
  EXPECT_GT(digraphs, 0);
}

TEST(SolverStateTest, SubSinkDemandsSumToSinkDemand) {
  for (uint64_t seed = 100; seed <= 160; ++seed) {
    const GeneratedInstance g = GenerateRandom(seed, RandomSpec{});
    const SsufDerivation d = DeriveSsuf(g.instance, CancelCycles(g.instance, g.flow));
    SolverState st(d.instance, d.flow, d.super_source, CycleRule::kNiceOnly);
    st.Run();
    std::map<VertexId, Rational> total;
    for (const SubSink& sub : st.subsinks()) total[sub.sink] += sub.demand;
    for (VertexId t : g.instance.Sinks()) EXPECT_EQ(total[t], g.instance.Demand(t));
  }
}

}  // namespace
}  // namespace unsplit
