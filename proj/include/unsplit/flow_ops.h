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

#ifndef UNSPLIT_FLOW_OPS_H_
#define UNSPLIT_FLOW_OPS_H_

#include <string>
#include <vector>

#include "unsplit/graph.h"

namespace unsplit {

// Reports a non-zero balance sum, negative capacities and self-loops.
// An empty result means the instance is well formed.
std::vector<std::string> ValidateInstance(const Instance& instance);

// Outflow minus inflow at `v`. Throws kInvalidInput for an unknown vertex or
// a flow of the wrong size.
Rational Excess(const Instance& instance, const Flow& flow, VertexId v);

// Violations of non-negativity and of excess(v) = b(v).
std::vector<std::string> TransshipmentViolations(const Instance& instance,
                                                 const Flow& flow);
bool IsTransshipment(const Instance& instance, const Flow& flow);
// flow_a <= c_a on every arc.
bool IsCapacityFeasible(const Instance& instance, const Flow& flow);

struct CycleFlow {
  std::vector<ArcId> arcs;
  Rational value;
};

struct Decomposition {
  std::vector<PathFlow> paths;
  std::vector<CycleFlow> cycles;
};

// Standard path/cycle decomposition of a b-transshipment. Every path runs
// from a source to a sink; superposing paths and cycles gives back `flow`.
// Throws kNotTransshipment if `flow` does not satisfy the balances.
Decomposition Decompose(const Instance& instance, const Flow& flow);

// Removes all flow cycles: repeatedly finds a cycle in the positive support
// by DFS and subtracts its bottleneck. The result has the same excess
// everywhere, is pointwise no larger, and has acyclic support.
Flow CancelCycles(const Instance& instance, const Flow& flow);

// Topological order of the digraph formed by the arcs with mask[a] set.
// Throws kCyclicSupport if that digraph has a cycle.
std::vector<VertexId> TopologicalOrder(const Instance& instance,
                                       const std::vector<bool>& arc_mask);
// Topological order of the positive support of `flow`.
std::vector<VertexId> SupportTopologicalOrder(const Instance& instance,
                                              const Flow& flow);

Flow Superpose(const Instance& instance, const std::vector<PathFlow>& paths);
Flow Superpose(const Instance& instance, const UnsplittableSolution& solution);

// Vertex sequence of `arcs`, or empty if they are not consecutive.
std::vector<VertexId> PathVertices(const Instance& instance,
                                   const std::vector<ArcId>& arcs);

}  // namespace unsplit

#endif  // UNSPLIT_FLOW_OPS_H_
