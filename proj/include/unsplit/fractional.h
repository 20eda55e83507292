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

#ifndef UNSPLIT_FRACTIONAL_H_
#define UNSPLIT_FRACTIONAL_H_

#include <vector>

#include "unsplit/graph.h"

namespace unsplit {

// Cut separating the supply side from the demand side whose capacity is
// smaller than what has to cross it.
struct CutWitness {
  std::vector<VertexId> source_side;
  Rational capacity;  // capacity of arcs leaving source_side
  Rational required;  // net supply inside source_side
};

struct FractionalResult {
  bool feasible = false;
  Flow flow;           // valid iff feasible; acyclic support
  CutWitness witness;  // valid iff !feasible
  Rational max_flow_value;
};

// Feasible b-transshipment via a super-source/super-sink maximum flow
// (shortest augmenting paths, exact arithmetic). The instance must be valid.
FractionalResult SolveFractional(const Instance& instance);

}  // namespace unsplit

#endif  // UNSPLIT_FRACTIONAL_H_
