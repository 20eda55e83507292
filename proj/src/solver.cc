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

#include "unsplit/solver.h"

#include <algorithm>
#include <map>
#include <utility>

#include "unsplit/error.h"
#include "unsplit/flow_ops.h"

namespace unsplit {
namespace {

std::string FreshVertexName(const Instance& instance, std::string name) {
  while (instance.FindVertex(name)) name += "'";
  return name;
}

std::string FreshArcName(const Instance& instance, std::string name) {
  while (instance.FindArc(name)) name += "'";
  return name;
}

Flow PrepareFlow(const Instance& instance, const Flow& flow) {
  if (auto problems = ValidateInstance(instance); !problems.empty()) {
    throw Error(ErrorCode::kInvalidInput, problems.front());
  }
  if (auto violations = TransshipmentViolations(instance, flow);
      !violations.empty()) {
    throw Error(ErrorCode::kNotTransshipment, violations.front());
  }
  return CancelCycles(instance, flow);
}

// Turns delivered sub-sinks into source-sink paths and merges the pieces
// that share a (source, sink) pair.
UnsplittableSolution CollectPaths(const SolverState& state, int arc_limit,
                                  bool drop_last) {
  std::map<std::pair<VertexId, VertexId>, PathFlow> merged;
  const auto& subsinks = state.subsinks();
  for (int i = 0; i < static_cast<int>(subsinks.size()); ++i) {
    const SubSink& sub = subsinks[i];
    if (!sub.delivered) {
      throw Error(ErrorCode::kInternal, "undelivered sub-sink at the end");
    }
    std::vector<ArcId> arcs(sub.trace.rbegin(), sub.trace.rend());
    if (drop_last) arcs.erase(arcs.begin());
    for (ArcId a : arcs) {
      if (a >= arc_limit) {
        throw Error(ErrorCode::kInternal, "path uses an auxiliary arc");
      }
    }
    const VertexId source = state.DeliveredVia(i);
    auto [it, inserted] = merged.try_emplace(
        {sub.sink, source}, PathFlow{source, sub.sink, sub.demand, arcs});
    if (!inserted) {
      if (it->second.arcs != arcs) {
        throw Error(ErrorCode::kInternal,
                    "two different paths for one source-sink pair");
      }
      it->second.value += sub.demand;
    }
  }
  UnsplittableSolution solution;
  for (auto& [key, path] : merged) solution.paths.push_back(std::move(path));
  return solution;
}

SolveResult RunDerived(const Instance& instance, const Flow& flow,
                       BoundDirection direction, const SolveOptions& options) {
  const Flow x = PrepareFlow(instance, flow);
  SolveResult result;
  result.direction = direction;
  result.bound = instance.MaxDemand();
  if (instance.Sinks().empty()) return result;

  SsufDerivation derived = DeriveSsuf(instance, x);
  SolverOptions engine;
  engine.direction = direction;
  engine.check_invariants = options.check_invariants;
  engine.record_events = options.record_events;
  SolverState state(std::move(derived.instance), derived.flow,
                    derived.super_source, CycleRule::kNiceOnly, engine);
  state.Run();
  result.solution = CollectPaths(state, derived.original_arcs, true);
  result.iterations = state.iteration();
  result.invariant_checks = state.invariant_checks();
  result.events = state.events();
  result.subsinks = state.subsinks();
  return result;
}

}  // namespace

SsufDerivation DeriveSsuf(const Instance& instance, const Flow& flow) {
  if (auto violations = TransshipmentViolations(instance, flow);
      !violations.empty()) {
    throw Error(ErrorCode::kNotTransshipment, violations.front());
  }
  SupportTopologicalOrder(instance, flow);

  SsufDerivation result;
  Instance& derived = result.instance;
  for (VertexId v = 0; v < instance.num_vertices(); ++v) {
    derived.AddVertex(instance.vertex_name(v),
                      instance.IsSource(v) ? Rational(0) : instance.balance(v));
  }
  std::vector<Rational> values = flow.values();
  for (ArcId a = 0; a < instance.num_arcs(); ++a) {
    derived.AddArc(instance.arc_name(a), instance.tail(a), instance.head(a),
                   instance.capacity(a));
  }
  result.original_arcs = instance.num_arcs();
  result.super_source =
      derived.AddVertex(FreshVertexName(instance, "s*"), instance.TotalDemand());
  result.dummy_arc.assign(instance.num_vertices(), kNoArc);
  for (VertexId s : instance.Sources()) {
    const std::string name = FreshArcName(
        instance, derived.vertex_name(result.super_source) + "->" +
                      instance.vertex_name(s));
    result.dummy_arc[s] = derived.AddArc(name, result.super_source, s,
                                         instance.balance(s));
    values.push_back(instance.balance(s));
  }
  result.flow = Flow(std::move(values));
  result.d_max = instance.MaxDemand();
  return result;
}

SolveResult SolveModifiedDgg(const Instance& instance, const Flow& flow,
                             const SolveOptions& options) {
  return RunDerived(instance, flow, BoundDirection::kUpper, options);
}

SolveResult SolveLowerBound(const Instance& instance, const Flow& flow,
                            const SolveOptions& options) {
  return RunDerived(instance, flow, BoundDirection::kLower, options);
}

SolveResult SolveDggSsuf(const Instance& instance, const Flow& flow,
                         const SolveOptions& options) {
  const Flow x = PrepareFlow(instance, flow);
  const std::vector<VertexId> sources = instance.Sources();
  SolveResult result;
  result.bound = instance.MaxDemand();
  if (sources.empty() && instance.Sinks().empty()) return result;
  if (sources.size() != 1) {
    throw Error(ErrorCode::kPrecondition,
                "single-source algorithm needs exactly one source");
  }
  SolverOptions engine;
  engine.check_invariants = options.check_invariants;
  engine.record_events = options.record_events;
  SolverState state(instance, x, sources.front(), CycleRule::kClassic, engine);
  state.Run();
  result.solution = CollectPaths(state, instance.num_arcs(), false);
  result.iterations = state.iteration();
  result.invariant_checks = state.invariant_checks();
  result.events = state.events();
  result.subsinks = state.subsinks();
  return result;
}

Instance ReverseInstance(const Instance& instance) {
  Instance reversed;
  for (VertexId v = 0; v < instance.num_vertices(); ++v) {
    reversed.AddVertex(instance.vertex_name(v), -instance.balance(v));
  }
  for (ArcId a = 0; a < instance.num_arcs(); ++a) {
    reversed.AddArc(instance.arc_name(a), instance.head(a), instance.tail(a),
                    instance.capacity(a));
  }
  return reversed;
}

SolveResult SolveReversed(const Instance& instance, const Flow& flow,
                          const SolveOptions& options) {
  SolveResult result =
      RunDerived(ReverseInstance(instance), flow, BoundDirection::kUpper,
                 options);
  result.reversed = true;
  for (PathFlow& path : result.solution.paths) {
    std::swap(path.source, path.sink);
    std::reverse(path.arcs.begin(), path.arcs.end());
  }
  std::sort(result.solution.paths.begin(), result.solution.paths.end(),
            [](const PathFlow& a, const PathFlow& b) {
              return std::pair(a.sink, a.source) < std::pair(b.sink, b.source);
            });
  return result;
}

SolveResult Solve(const Instance& instance, const Flow& flow, Variant variant,
                  const SolveOptions& options) {
  switch (variant) {
    case Variant::kUpper:
      return SolveModifiedDgg(instance, flow, options);
    case Variant::kLower:
      return SolveLowerBound(instance, flow, options);
    case Variant::kReversed:
      return SolveReversed(instance, flow, options);
    case Variant::kAuto:
      if (instance.MaxSupply() < instance.MaxDemand()) {
        return SolveReversed(instance, flow, options);
      }
      return SolveModifiedDgg(instance, flow, options);
  }
  throw Error(ErrorCode::kInternal, "unknown variant");
}

}  // namespace unsplit
