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

#ifndef UNSPLIT_INSTANCES_H_
#define UNSPLIT_INSTANCES_H_

#include <cstdint>
#include <utility>
#include <vector>

#include "unsplit/graph.h"

namespace unsplit {

struct GeneratedInstance {
  Instance instance;
  Flow flow;  // a feasible fractional b-transshipment
};

// q sinks of demand 1. Sink t^j has a dedicated source s^j joined to it by
// q-k parallel unit arcs; k shared sources s^{q+i} reach every sink through
// a shared unit arc a_i. The flow puts 1/q on every arc entering a sink.
// Requires q >= 3 and q > k + 1 (and k >= 1).
GeneratedInstance GenerateTightness(int q, int k);

// Unit capacities, q sources of supply 1 feeding a hub m, sinks t^1..t^q of
// demand 1 - 1/q behind arcs a_i = (m, r_i), and a sink t^{q+1} of demand 1
// reachable from every r_i. Requires q >= 2.
Instance GenerateCostOfConfluence(int q);

struct NonintegralInstance {
  Instance instance;
  UnsplittableSolution witness;  // the only feasible routing, fractional
};

// Two sources, two sinks, total demand 20: feasible unsplittably, but not
// with integral path values.
NonintegralInstance GenerateNonintegral();

// Disjoint-paths reduction: keeps `base` (unit capacities required), sets
// b(s^i) = k and b(t^i) = -k, and adds unit arcs (s^i, t^j) for i != j.
Instance GenerateFromDisjointPaths(
    const Instance& base, const std::vector<std::pair<VertexId, VertexId>>& pairs);

enum class DemandRegime {
  kFree,     // capacities only cover the flow
  kQuarter,  // d_max <= c_min / 4
  kThird,    // d_max <= c_min / 3
  kBelow,    // d_max < c_min
  kEqual,    // d_max == c_min
};

struct RandomSpec {
  int vertices = 12;
  int sources = 2;
  int sinks = 3;
  int paths = 8;
  int extra_arcs = 4;
  int max_denominator = 4;
  DemandRegime regime = DemandRegime::kFree;
};

// Acyclic instance (arcs go from lower to higher vertex id) whose flow is a
// superposition of random source-sink paths; balances are read off the
// flow. A pure function of (seed, spec).
GeneratedInstance GenerateRandom(uint64_t seed, const RandomSpec& spec);

}  // namespace unsplit

#endif  // UNSPLIT_INSTANCES_H_
