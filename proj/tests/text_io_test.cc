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

#include "unsplit/text_io.h"

#include <functional>
#include <sstream>
#include <string>

#include "gtest/gtest.h"
#include "unsplit/error.h"

namespace unsplit {
namespace {

constexpr char kInstance[] = R"(# two sinks
v s 3
v m 0
v t -1
v u -2

a sm s m 3
a mt m t 1/2
a mt2 m t 1
a mu m u 2.5
)";

Instance Parsed() {
  std::istringstream in(kInstance);
  return ParseInstance(in);
}

ErrorCode CodeOf(const std::function<void()>& action) {
  try {
    action();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInternal;
}

TEST(TextIoTest, ParsesInstance) {
  const Instance inst = Parsed();
  EXPECT_EQ(inst.num_vertices(), 4);
  EXPECT_EQ(inst.num_arcs(), 4);
  EXPECT_EQ(inst.capacity(*inst.FindArc("mu")), Rational(5, 2));
  EXPECT_EQ(inst.balance(*inst.FindVertex("u")), -2);
}

TEST(TextIoTest, InstanceRoundTrip) {
  const Instance inst = Parsed();
  std::ostringstream out;
  WriteInstance(out, inst);
  std::istringstream again(out.str());
  const Instance copy = ParseInstance(again);
  std::ostringstream out2;
  WriteInstance(out2, copy);
  EXPECT_EQ(out.str(), out2.str());
}

TEST(TextIoTest, FlowDefaultsToZeroAndRoundTrips) {
  const Instance inst = Parsed();
  std::istringstream in("f sm 3\nf mt 1/2\nf mt2 1/2\nf mu 2\n");
  const Flow flow = ParseFlow(in, inst);
  EXPECT_EQ(flow[1], Rational(1, 2));
  std::ostringstream out;
  WriteFlow(out, inst, flow);
  std::istringstream again(out.str());
  EXPECT_EQ(ParseFlow(again, inst), flow);

  std::istringstream partial("f sm 1\n");
  EXPECT_EQ(ParseFlow(partial, inst)[3], 0);
}

TEST(TextIoTest, SolutionRoundTripIgnoresStatsComments) {
  const Instance inst = Parsed();
  UnsplittableSolution sol;
  sol.paths.push_back({0, 2, 1, {0, 2}});
  sol.paths.push_back({0, 3, 2, {0, 3}});
  SolutionStats stats;
  stats.entries = {{"paths", "2"}};
  std::ostringstream out;
  WriteSolution(out, inst, sol, &stats);
  EXPECT_NE(out.str().find("# paths 2"), std::string::npos);
  std::istringstream again(out.str());
  EXPECT_EQ(ParseSolution(again, inst), sol);
}

TEST(TextIoTest, PlanRoundTrip) {
  const Instance inst = Parsed();
  std::vector<PlanRound> plan(2);
  plan[0].sinks = {2};
  plan[0].solution.paths.push_back({0, 2, 1, {0, 2}});
  plan[1].sinks = {3};
  plan[1].solution.paths.push_back({0, 3, 2, {0, 3}});
  std::ostringstream out;
  WritePlan(out, inst, plan);
  std::istringstream again(out.str());
  EXPECT_EQ(ParsePlan(again, inst), plan);
}

TEST(TextIoTest, RejectsMalformedInput) {
  EXPECT_EQ(CodeOf([] {
              std::istringstream in("v s 1\na x s q 1\n");
              ParseInstance(in);
            }),
            ErrorCode::kInvalidInput);
  EXPECT_EQ(CodeOf([] {
              std::istringstream in("v s one\n");
              ParseInstance(in);
            }),
            ErrorCode::kInvalidInput);
  EXPECT_EQ(CodeOf([] {
              std::istringstream in("q nothing\n");
              ParseInstance(in);
            }),
            ErrorCode::kInvalidInput);
  const Instance inst = Parsed();
  EXPECT_EQ(CodeOf([&] {
              std::istringstream in("f nope 1\n");
              ParseFlow(in, inst);
            }),
            ErrorCode::kInvalidInput);
  EXPECT_EQ(CodeOf([&] {
              std::istringstream in("p s t 1\n");
              ParseSolution(in, inst);
            }),
            ErrorCode::kInvalidInput);
}

TEST(TextIoTest, MissingFileIsInvalidInput) {
  EXPECT_EQ(CodeOf([] { ReadInstanceFile("/nonexistent/instance.txt"); }),
            ErrorCode::kInvalidInput);
}

}  // namespace
}  // namespace unsplit
