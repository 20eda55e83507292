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

#ifndef UNSPLIT_VERIFY_H_
#define UNSPLIT_VERIFY_H_

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "unsplit/graph.h"
#include "unsplit/solver_state.h"

namespace unsplit {

struct CheckOutcome {
  std::string name;
  bool passed = true;
  std::string witness;  // set for every failure
  std::string detail;
};

struct ReportStats {
  int path_count = 0;
  // max_a (flow_a - x_a); only when a reference flow is known.
  std::optional<Rational> max_increase;
  // max_a flow_a / c_a over arcs of positive capacity.
  std::optional<Rational> congestion;
};

struct CheckReport {
  std::vector<CheckOutcome> checks;
  ReportStats stats;

  bool passed() const;
  const CheckOutcome* Find(const std::string& name) const;
  void Append(const CheckReport& other);
};

// Pair uniqueness, simple source-to-sink paths, and an exact b-transshipment
// after superposition.
CheckReport CheckUnsplittable(const Instance& instance,
                              const UnsplittableSolution& solution);

// Strict per-arc comparison with x_a + bound (kUpper) or x_a - bound
// (kLower). `bound` defaults to the largest demand.
CheckReport CheckDggBound(const Instance& instance, const Flow& reference,
                          const UnsplittableSolution& solution,
                          BoundDirection direction,
                          std::optional<Rational> bound = std::nullopt);

// For every sink, each vertex on its paths other than the sink has exactly
// one outgoing arc in the union of those paths.
CheckReport CheckConfluence(const Instance& instance,
                            const UnsplittableSolution& solution);

// The source-sink graph of the solution is a forest.
CheckReport CheckBipartiteTree(const Instance& instance,
                               const UnsplittableSolution& solution);

CheckReport CheckCapacity(const Instance& instance,
                          const UnsplittableSolution& solution);

ReportStats ComputeStats(const Instance& instance,
                         const UnsplittableSolution& solution,
                         const Flow* reference);

enum class ReportFormat { kText, kKeyValue };
void WriteReport(std::ostream& out, const CheckReport& report,
                 ReportFormat format);

}  // namespace unsplit

#endif  // UNSPLIT_VERIFY_H_
