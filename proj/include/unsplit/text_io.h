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

#ifndef UNSPLIT_TEXT_IO_H_
#define UNSPLIT_TEXT_IO_H_

#include <iosfwd>
#include <string>
#include <vector>

#include "unsplit/graph.h"

namespace unsplit {

// Line-oriented text formats. Blank lines and '#' comments are ignored.
// Numbers may be integers, decimals or p/q fractions.
//
//   instance:  v <id> <balance>
//              a <id> <tail> <head> <capacity>
//   flow:      f <arc-id> <value>           (unlisted arcs carry 0)
//   solution:  p <source> <sink> <value> <arc-id ...>
//   plan:      round <i>  followed by solution lines
//
// Parse errors throw Error(kInvalidInput) naming the offending line.

Instance ParseInstance(std::istream& in);
void WriteInstance(std::ostream& out, const Instance& instance);

Flow ParseFlow(std::istream& in, const Instance& instance);
void WriteFlow(std::ostream& out, const Instance& instance, const Flow& flow);

UnsplittableSolution ParseSolution(std::istream& in, const Instance& instance);

// Stats lines are emitted as comments so the output stays parseable.
struct SolutionStats {
  std::vector<std::pair<std::string, std::string>> entries;
};
void WriteSolution(std::ostream& out, const Instance& instance,
                   const UnsplittableSolution& solution,
                   const SolutionStats* stats = nullptr);

struct PlanRound {
  std::vector<VertexId> sinks;
  UnsplittableSolution solution;

  bool operator==(const PlanRound& other) const = default;
};

// Sinks of a parsed round are recovered from its paths.
std::vector<PlanRound> ParsePlan(std::istream& in, const Instance& instance);
void WritePlan(std::ostream& out, const Instance& instance,
               const std::vector<PlanRound>& rounds);

// File helpers. Throw kInvalidInput if the file cannot be opened.
Instance ReadInstanceFile(const std::string& path);
Flow ReadFlowFile(const std::string& path, const Instance& instance);
UnsplittableSolution ReadSolutionFile(const std::string& path,
                                      const Instance& instance);

}  // namespace unsplit

#endif  // UNSPLIT_TEXT_IO_H_
