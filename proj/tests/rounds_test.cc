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

#include "unsplit/rounds.h"

#include <map>
#include <variant>

#include "gtest/gtest.h"
#include "unsplit/error.h"
#include "unsplit/instances.h"

namespace unsplit {
namespace {

int64_t Binomial(int64_t n, int64_t k) {
  int64_t value = 1;
  for (int64_t i = 1; i <= k; ++i) value = value * (n - k + i) / i;
  return value;
}

TEST(ChooseNTest, SmallestAdmissibleN) {
  EXPECT_EQ(ChooseN(1, 2), 2);
  EXPECT_EQ(ChooseN(1, 10), 2);
  EXPECT_EQ(ChooseN(2, 3), 3);
  EXPECT_EQ(ChooseN(3, 4), 4);
  EXPECT_EQ(ChooseN(Rational(5, 7), 1), 4);
  for (int n = 2; n <= 6; ++n) {
    // d = (1 - 1/n) c is the boundary of n.
    EXPECT_EQ(ChooseN(1 - Rational(1, n), 1), n);
  }
}

TEST(ChooseNTest, EqualOrLargerDemandIsAPreconditionError) {
  try {
    ChooseN(1, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kPrecondition);
  }
  EXPECT_THROW(ChooseN(2, 1), Error);
}

TEST(GroupTupleTest, CountMatchesStarsAndBars) {
  for (int n = 2; n <= 4; ++n) {
    const int64_t m = (n * n - 1) * (n + 1);
    int64_t expected = 0;
    for (int64_t sum = m - (n + 1); sum <= m; ++sum) expected += Binomial(sum + n, n);
    EXPECT_EQ(CountGroupTuples(n), expected) << n;
  }
  EXPECT_EQ(CountGroupTuples(2), 164);
  EXPECT_EQ(GroupTupleClosedForm(2, 3), 164);
  EXPECT_EQ(GroupTupleClosedForm(2, 2), 136);
}

TEST(GridCellTest, CellBoundaries) {
  // n = 2 gives 9 cells of width 1/9.
  EXPECT_EQ(GridCell(0, 2), 0);
  EXPECT_EQ(GridCell(Rational(1, 9), 2), 1);
  EXPECT_EQ(GridCell(Rational(1, 2), 2), 4);
  EXPECT_EQ(GridCell(1, 2), 8);
}

TEST(CopiedNetworkTest, StructureMatchesOriginal) {
  RandomSpec spec;
  spec.regime = DemandRegime::kQuarter;
  const GeneratedInstance g = GenerateRandom(3, spec);
  const int copies = 3;
  const CopiedNetwork net = BuildCopiedNetwork(g.instance, g.flow, copies);
  const int sources = static_cast<int>(g.instance.Sources().size());
  const int sinks = static_cast<int>(g.instance.Sinks().size());
  EXPECT_EQ(net.instance.num_vertices(), copies * g.instance.num_vertices() + sources + sinks);
  EXPECT_EQ(net.instance.num_arcs(), copies * (g.instance.num_arcs() + sources + sinks));
  std::map<ArcId, int> seen;
  for (ArcId a = 0; a < net.instance.num_arcs(); ++a) {
    const ArcId orig = net.original_arc[a];
    if (orig == kNoArc) continue;
    ++seen[orig];
    EXPECT_EQ(net.instance.capacity(a), g.instance.capacity(orig) / copies);
    EXPECT_EQ(net.flow[a], g.flow[orig] / copies);
  }
  for (ArcId a = 0; a < g.instance.num_arcs(); ++a) EXPECT_EQ(seen[a], copies);
  for (VertexId t : g.instance.Sinks()) {
    EXPECT_EQ(net.instance.balance(net.super_sink[t]), -g.instance.Demand(t));
    for (ArcId a : net.instance.in_arcs(net.super_sink[t])) {
      EXPECT_EQ(net.instance.capacity(a), g.instance.Demand(t) / copies);
    }
  }
}

TEST(CopiedRunTest, SharesSumToOne) {
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    RandomSpec spec;
    spec.regime = DemandRegime::kThird;
    const GeneratedInstance g = GenerateRandom(seed, spec);
    const CopiedRun run = RunCopied(g.instance, g.flow, 3);
    for (const SinkShare& share : run.shares) {
      Rational total = 0;
      int used = 0;
      for (const Rational& theta : share.theta) {
        total += theta;
        used += theta > 0;
      }
      EXPECT_EQ(total, 1);
      EXPECT_EQ(share.critical, used > 1);
      EXPECT_GT(share.theta[share.label], 0);
    }
  }
}

// A copy arc may serve the singular digraph of one critically split sink only.
TEST(CopiedRunTest, CopyArcsServeOneSingularDigraph) {
  int routed = 0;
  for (uint64_t seed = 1; seed <= 40; ++seed) {
    RandomSpec spec;
    spec.regime = DemandRegime::kQuarter;
    spec.sinks = 4;
    const GeneratedInstance g = GenerateRandom(seed, spec);
    const CopiedRun run = RunCopied(g.instance, g.flow, 3);
    std::map<ArcId, int> owner;
    for (const SolverEvent& e : run.result.events) {
      const auto* route = std::get_if<event::RouteSingular>(&e);
      if (route == nullptr) continue;
      ++routed;
      const int sink = run.result.subsinks[route->split_subsink].sink;
      for (ArcId a : route->arcs) {
        auto [it, fresh] = owner.emplace(a, sink);
        EXPECT_TRUE(fresh || it->second == sink) << "seed " << seed;
      }
    }
  }
  EXPECT_GT(routed, 0);
}

// Each scheme's plan is re-checked with an independent per-round sum.
void ExpectValidPlan(const Instance& inst, const RoundPlan& plan) {
  EXPECT_TRUE(VerifyRoundPlan(inst, plan.rounds).empty());
  EXPECT_LE(static_cast<int64_t>(plan.rounds.size()), plan.round_bound);
  for (const PlanRound& round : plan.rounds) {
    std::vector<Rational> load(inst.num_arcs(), Rational(0));
    for (const PathFlow& p : round.solution.paths) {
      for (ArcId a : p.arcs) load[a] += p.value;
    }
    for (ArcId a = 0; a < inst.num_arcs(); ++a) EXPECT_LE(load[a], inst.capacity(a));
  }
}

TEST(RoundSchemesTest, PlansVerify) {
  for (uint64_t seed = 1; seed <= 15; ++seed) {
    RandomSpec spec;
    spec.regime = DemandRegime::kQuarter;
    spec.sinks = 4;
    const GeneratedInstance g = GenerateRandom(seed, spec);
    const RoundPlan four = RouteFourRounds(g.instance, g.flow);
    const RoundPlan six = RouteSixRounds(g.instance, g.flow);
    const RoundPlan general = RouteGeneralRounds(g.instance, g.flow);
    EXPECT_LE(four.rounds.size(), 4u);
    EXPECT_LE(six.rounds.size(), 6u);
    ExpectValidPlan(g.instance, four);
    ExpectValidPlan(g.instance, six);
    ExpectValidPlan(g.instance, general);
  }
}

TEST(RoundSchemesTest, RegimePreconditions) {
  RandomSpec spec;
  spec.regime = DemandRegime::kBelow;
  const GeneratedInstance g = GenerateRandom(8, spec);
  if (4 * g.instance.MaxDemand() > *g.instance.MinCapacity()) {
    EXPECT_THROW(RouteFourRounds(g.instance, g.flow), Error);
  }
  spec.regime = DemandRegime::kEqual;
  const GeneratedInstance e = GenerateRandom(8, spec);
  EXPECT_THROW(RouteGeneralRounds(e.instance, e.flow), Error);
}

TEST(VerifyRoundPlanTest, DetectsBrokenPlans) {
  RandomSpec spec;
  spec.regime = DemandRegime::kQuarter;
  const GeneratedInstance g = GenerateRandom(4, spec);
  const RoundPlan plan = RouteFourRounds(g.instance, g.flow);
  ASSERT_TRUE(VerifyRoundPlan(g.instance, plan.rounds).empty());

  std::vector<PlanRound> dropped = plan.rounds;
  dropped.pop_back();
  EXPECT_FALSE(VerifyRoundPlan(g.instance, dropped).empty());

  std::vector<PlanRound> merged(1);
  for (const PlanRound& round : plan.rounds) {
    merged[0].sinks.insert(merged[0].sinks.end(), round.sinks.begin(), round.sinks.end());
    for (const PathFlow& p : round.solution.paths) {
      PathFlow heavy = p;
      heavy.value *= 1000;
      merged[0].solution.paths.push_back(heavy);
    }
  }
  EXPECT_FALSE(VerifyRoundPlan(g.instance, merged).empty());
}

TEST(BestRoundTest, AtLeastAverageDemand) {
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    RandomSpec spec;
    spec.regime = DemandRegime::kQuarter;
    const GeneratedInstance g = GenerateRandom(seed, spec);
    const RoundPlan plan = RouteFourRounds(g.instance, g.flow);
    const Rational best = BestRound(g.instance, plan.rounds).second;
    EXPECT_GE(best * static_cast<int>(plan.rounds.size()), g.instance.TotalDemand());
  }
}

TEST(BestRoundTest, PicksLargestDemandLowestIndexOnTies) {
  Instance inst;
  const VertexId s = inst.AddVertex("s", 4);
  const VertexId a = inst.AddVertex("a", -1);
  const VertexId b = inst.AddVertex("b", -3);
  inst.AddArc("sa", s, a, 4);
  inst.AddArc("sb", s, b, 4);
  std::vector<PlanRound> rounds(2);
  rounds[0].sinks = {a};
  rounds[1].sinks = {b};
  EXPECT_EQ(BestRound(inst, rounds), std::make_pair(1, Rational(3)));
  rounds[0].sinks = {b};
  rounds[1].sinks = {a};
  EXPECT_EQ(BestRound(inst, rounds).first, 0);
}

}  // namespace
}  // namespace unsplit
