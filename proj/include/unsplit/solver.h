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

#ifndef UNSPLIT_SOLVER_H_
#define UNSPLIT_SOLVER_H_

#include <cstdint>
#include <vector>

#include "unsplit/graph.h"
#include "unsplit/solver_state.h"

namespace unsplit {

// Single-source view of a transshipment instance: a super-source s* feeds
// every source s through a dummy arc (s*, s) carrying b(s).
//
// Original vertices and arcs keep their ids; s* is the last vertex and the
// dummy arcs follow the original arcs in order of their source.
struct SsufDerivation {
  Instance instance;
  Flow flow;
  VertexId super_source = kNoVertex;
  int original_arcs = 0;
  // dummy_arc[v] is the arc (s*, v) for every source v, kNoArc otherwise.
  std::vector<ArcId> dummy_arc;
  Rational d_max;
};

SsufDerivation DeriveSsuf(const Instance& instance, const Flow& flow);

enum class Variant { kUpper, kLower, kReversed, kAuto };

struct SolveOptions {
  bool check_invariants = false;
  bool record_events = true;
};

struct SolveResult {
  UnsplittableSolution solution;
  // The instance the solution is guaranteed against: flow < x + bound for
  // the upper and reversed variants, flow > x - bound for the lower one.
  BoundDirection direction = BoundDirection::kUpper;
  Rational bound;
  bool reversed = false;
  int iterations = 0;
  int64_t invariant_checks = 0;
  // Raw engine output, in the ids of the derived (or reversed) network.
  std::vector<SolverEvent> events;
  std::vector<SubSink> subsinks;
};

SolveResult SolveModifiedDgg(const Instance& instance, const Flow& flow,
                             const SolveOptions& options = {});
SolveResult SolveLowerBound(const Instance& instance, const Flow& flow,
                            const SolveOptions& options = {});
SolveResult SolveReversed(const Instance& instance, const Flow& flow,
                          const SolveOptions& options = {});
// Original DGG algorithm; the instance must have exactly one source.
SolveResult SolveDggSsuf(const Instance& instance, const Flow& flow,
                         const SolveOptions& options = {});

// kAuto picks the reversed run when the largest supply is below the
// largest demand.
SolveResult Solve(const Instance& instance, const Flow& flow, Variant variant,
                  const SolveOptions& options = {});

// Same instance with every arc reversed and balances negated.
Instance ReverseInstance(const Instance& instance);

}  // namespace unsplit

#endif  // UNSPLIT_SOLVER_H_
