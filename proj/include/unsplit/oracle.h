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

#ifndef UNSPLIT_ORACLE_H_
#define UNSPLIT_ORACLE_H_

#include <cstdint>
#include <vector>

#include "unsplit/graph.h"

namespace unsplit {

// Exhaustive searches for desk-scale instances. Each throws kScaleGuard
// instead of returning a possibly wrong answer when a limit is hit.
struct OracleLimits {
  int64_t max_paths = 5000;    // simple paths (or in-trees) enumerated
  int64_t max_nodes = 5000;    // search nodes, one exact LP each
};

std::vector<std::vector<ArcId>> EnumerateSimplePaths(const Instance& instance,
                                                     VertexId source,
                                                     VertexId sink,
                                                     int64_t limit);

struct FeasibilityResult {
  bool feasible = false;
  UnsplittableSolution witness;
  int64_t nodes = 0;
};

// Is there an unsplittable b-transshipment within the capacities? With
// `integral_only` every path value must be an integer.
FeasibilityResult BruteForceFeasible(const Instance& instance,
                                     bool integral_only,
                                     const OracleLimits& limits = {});

struct ViolationResult {
  Rational violation;  // min over solutions of max_a (flow_a - reference_a)
  UnsplittableSolution witness;
  int64_t nodes = 0;
};

// Capacities are ignored; only the comparison with `reference` counts.
ViolationResult MinViolation(const Instance& instance, const Flow& reference,
                             const OracleLimits& limits = {});

// As MinViolation, over solutions in which every sink is served confluently.
ViolationResult MinConfluentViolation(const Instance& instance,
                                      const Flow& reference,
                                      const OracleLimits& limits = {});

}  // namespace unsplit

#endif  // UNSPLIT_ORACLE_H_
