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

#ifndef UNSPLIT_ROUNDS_H_
#define UNSPLIT_ROUNDS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "unsplit/graph.h"
#include "unsplit/solver.h"
#include "unsplit/text_io.h"

namespace unsplit {

// `copies` identical copies of the network, each with capacities and flow
// scaled by 1/copies. Every sink t gets a super-sink T_t fed by all copies
// of t, and every source s a head-source S_s feeding all copies of s; these
// carry the original balances.
struct CopiedNetwork {
  Instance instance;
  Flow flow;
  int copies = 0;
  std::vector<ArcId> original_arc;  // per copied-network arc, or kNoArc
  std::vector<int> arc_copy;        // per copied-network arc, 0-based
  std::vector<VertexId> super_sink;   // per original vertex, or kNoVertex
  std::vector<VertexId> head_source;  // per original vertex, or kNoVertex
  std::vector<VertexId> original_terminal;  // per copied-network vertex
};

CopiedNetwork BuildCopiedNetwork(const Instance& instance, const Flow& flow,
                                 int copies);

struct SinkShare {
  VertexId sink = kNoVertex;
  bool critical = false;
  int label = 0;  // copy holding the forward part (or the whole demand)
  std::vector<Rational> theta;  // share of the demand routed per copy
  std::vector<PathFlow> paths;  // in the original network
};

struct CopiedRun {
  CopiedNetwork network;
  SolveResult result;
  std::vector<SinkShare> shares;  // one per original sink, by sink id
};

// Runs the modified algorithm on the copied network and classifies sinks.
CopiedRun RunCopied(const Instance& instance, const Flow& flow, int copies);

struct RoundPlan {
  std::vector<PlanRound> rounds;
  int copies = 0;
  int64_t round_bound = 0;
  // Number of critically split sinks seen while building the plan.
  int critical_sinks = 0;
};

// Smallest n >= 2 with d_max <= (1 - 1/n) c_min. Fails when d_max >= c_min.
int ChooseN(const Rational& d_max, const Rational& c_min);

// Exhaustive count of non-negative (n+1)-tuples whose sum lies in
// [M - (n+1), M], M = (n^2 - 1)(n + 1).
int64_t CountGroupTuples(int n);
// sum_{j=0}^{last_j} C(M - j + n, n).
int64_t GroupTupleClosedForm(int n, int last_j);

// Grid index of a share: floor(theta / eps), with theta = 1 in the top cell.
int64_t GridCell(const Rational& theta, int n);

RoundPlan RouteGeneralRounds(const Instance& instance, const Flow& flow,
                             std::optional<int> n = std::nullopt);
RoundPlan RouteSixRounds(const Instance& instance, const Flow& flow);
RoundPlan RouteFourRounds(const Instance& instance, const Flow& flow);

// Partition of the sinks, exact per-round capacity feasibility, and the
// per-source supply ledger. Empty when the plan is valid.
std::vector<std::string> VerifyRoundPlan(const Instance& instance,
                                         const std::vector<PlanRound>& rounds);

// Round with the largest routed demand; ties go to the lowest index.
std::pair<int, Rational> BestRound(const Instance& instance,
                                   const std::vector<PlanRound>& rounds);

}  // namespace unsplit

#endif  // UNSPLIT_ROUNDS_H_
