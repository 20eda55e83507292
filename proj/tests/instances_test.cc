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

#include "unsplit/instances.h"

#include <set>

#include "gtest/gtest.h"
#include "unsplit/error.h"
#include "unsplit/flow_ops.h"
#include "unsplit/verify.h"

namespace unsplit {
namespace {

void ExpectFeasibleFlow(const GeneratedInstance& g) {
  EXPECT_TRUE(ValidateInstance(g.instance).empty());
  EXPECT_TRUE(IsTransshipment(g.instance, g.flow));
  EXPECT_TRUE(IsCapacityFeasible(g.instance, g.flow));
}

TEST(TightnessTest, ShapeAndFlow) {
  for (auto [q, k] : {std::pair{3, 1}, std::pair{4, 1}, std::pair{5, 2}}) {
    const GeneratedInstance g = GenerateTightness(q, k);
    ExpectFeasibleFlow(g);
    EXPECT_EQ(g.instance.MaxDemand(), 1);
    EXPECT_EQ(g.instance.MinCapacity(), Rational(1));
    EXPECT_EQ(g.instance.Sinks().size(), static_cast<size_t>(q));
  }
}

TEST(TightnessTest, RejectsBadParameters) {
  EXPECT_THROW(GenerateTightness(2, 2), Error);
  EXPECT_THROW(GenerateTightness(1, 0), Error);
}

TEST(CostOfConfluenceTest, BalancesAndUnitCapacities) {
  for (int q = 2; q <= 5; ++q) {
    const Instance inst = GenerateCostOfConfluence(q);
    EXPECT_TRUE(ValidateInstance(inst).empty());
    EXPECT_EQ(inst.TotalDemand(), q);
    for (ArcId a = 0; a < inst.num_arcs(); ++a) EXPECT_EQ(inst.capacity(a), 1);
  }
}

TEST(NonintegralTest, WitnessRoutesEverything) {
  const NonintegralInstance g = GenerateNonintegral();
  EXPECT_EQ(g.instance.TotalDemand(), 20);
  EXPECT_TRUE(CheckUnsplittable(g.instance, g.witness).passed());
  EXPECT_TRUE(CheckCapacity(g.instance, g.witness).passed());
  bool fractional = false;
  for (const PathFlow& p : g.witness.paths) fractional |= p.value.get_den() != 1;
  EXPECT_TRUE(fractional);
}

TEST(DisjointPathsTest, AddsCrossArcsAndDemands) {
  Instance base;
  const VertexId s1 = base.AddVertex("s1");
  const VertexId t1 = base.AddVertex("t1");
  const VertexId s2 = base.AddVertex("s2");
  const VertexId t2 = base.AddVertex("t2");
  const VertexId m = base.AddVertex("m");
  base.AddArc("a", s1, m, 1);
  base.AddArc("b", m, t1, 1);
  base.AddArc("c", s2, m, 1);
  base.AddArc("d", m, t2, 1);
  const Instance inst = GenerateFromDisjointPaths(base, {{s1, t1}, {s2, t2}});
  EXPECT_EQ(inst.num_arcs(), base.num_arcs() + 2);
  EXPECT_EQ(inst.balance(s1), 2);
  EXPECT_EQ(inst.balance(t2), -2);
  EXPECT_TRUE(inst.FindArc("x1_2").has_value());
  EXPECT_FALSE(inst.FindArc("x1_1").has_value());
}

TEST(DisjointPathsTest, RejectsNonUnitCapacity) {
  Instance base;
  const VertexId s = base.AddVertex("s");
  const VertexId t = base.AddVertex("t");
  base.AddArc("st", s, t, 2);
  EXPECT_THROW(GenerateFromDisjointPaths(base, {{s, t}}), Error);
}

TEST(RandomTest, SameSeedSameInstance) {
  const GeneratedInstance a = GenerateRandom(42, RandomSpec{});
  const GeneratedInstance b = GenerateRandom(42, RandomSpec{});
  const GeneratedInstance c = GenerateRandom(43, RandomSpec{});
  EXPECT_EQ(a.flow, b.flow);
  EXPECT_EQ(a.instance.num_arcs(), b.instance.num_arcs());
  EXPECT_FALSE(a.flow == c.flow && a.instance.num_arcs() == c.instance.num_arcs());
}

TEST(RandomTest, RegimesHold) {
  for (uint64_t seed = 1; seed <= 40; ++seed) {
    for (DemandRegime regime : {DemandRegime::kFree, DemandRegime::kQuarter, DemandRegime::kThird,
                                DemandRegime::kBelow, DemandRegime::kEqual}) {
      RandomSpec spec;
      spec.regime = regime;
      const GeneratedInstance g = GenerateRandom(seed, spec);
      ExpectFeasibleFlow(g);
      EXPECT_NO_THROW(SupportTopologicalOrder(g.instance, g.flow));
      const Rational d = g.instance.MaxDemand();
      const Rational c = *g.instance.MinCapacity();
      switch (regime) {
        case DemandRegime::kQuarter: EXPECT_LE(4 * d, c); break;
        case DemandRegime::kThird: EXPECT_LE(3 * d, c); break;
        case DemandRegime::kBelow: EXPECT_LT(d, c); break;
        case DemandRegime::kEqual: EXPECT_EQ(d, c); break;
        case DemandRegime::kFree: break;
      }
    }
  }
}

// Path values have denominators up to 3, so balances divide lcm(1, 2, 3).
TEST(RandomTest, DenominatorsStayBounded) {
  RandomSpec spec;
  spec.max_denominator = 3;
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    const GeneratedInstance g = GenerateRandom(seed, spec);
    for (VertexId v = 0; v < g.instance.num_vertices(); ++v) {
      EXPECT_EQ(6 % g.instance.balance(v).get_den(), 0);
    }
  }
}

}  // namespace
}  // namespace unsplit
