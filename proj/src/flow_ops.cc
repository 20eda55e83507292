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

#include "unsplit/flow_ops.h"

#include <algorithm>
#include <deque>
#include <optional>

#include "unsplit/error.h"

namespace unsplit {
namespace {

void CheckFlowSize(const Instance& instance, const Flow& flow) {
  if (flow.size() != instance.num_arcs()) {
    throw Error(ErrorCode::kInvalidInput,
                "flow has " + std::to_string(flow.size()) +
                    " values but the instance has " +
                    std::to_string(instance.num_arcs()) + " arcs");
  }
}

// Finds a directed cycle among arcs with positive value, as a list of arcs
// in traversal order. Iterative DFS with white/grey/black colouring.
std::optional<std::vector<ArcId>> FindPositiveCycle(const Instance& instance,
                                                    const Flow& flow) {
  const int n = instance.num_vertices();
  enum Color : char { kWhite, kGrey, kBlack };
  std::vector<Color> color(n, kWhite);
  std::vector<ArcId> parent_arc(n, kNoArc);
  std::vector<size_t> next(n, 0);
  for (VertexId root = 0; root < n; ++root) {
    if (color[root] != kWhite) continue;
    std::vector<VertexId> stack = {root};
    color[root] = kGrey;
    while (!stack.empty()) {
      const VertexId v = stack.back();
      const auto out = instance.out_arcs(v);
      if (next[v] == out.size()) {
        color[v] = kBlack;
        stack.pop_back();
        continue;
      }
      const ArcId a = out[next[v]++];
      if (flow[a] <= 0) continue;
      const VertexId w = instance.head(a);
      if (color[w] == kWhite) {
        color[w] = kGrey;
        parent_arc[w] = a;
        stack.push_back(w);
      } else if (color[w] == kGrey) {
        std::vector<ArcId> cycle = {a};
        for (VertexId u = v; u != w; u = instance.tail(parent_arc[u])) {
          cycle.push_back(parent_arc[u]);
        }
        std::reverse(cycle.begin(), cycle.end());
        return cycle;
      }
    }
  }
  return std::nullopt;
}

}  // namespace

std::vector<std::string> ValidateInstance(const Instance& instance) {
  std::vector<std::string> violations;
  Rational sum = 0;
  for (VertexId v = 0; v < instance.num_vertices(); ++v) {
    sum += instance.balance(v);
  }
  if (sum != 0) {
    violations.push_back("balance sum != 0 (is " + FormatRational(sum) + ")");
  }
  for (ArcId a = 0; a < instance.num_arcs(); ++a) {
    if (instance.capacity(a) < 0) {
      violations.push_back("negative capacity on arc " + instance.arc_name(a));
    }
    if (instance.tail(a) == instance.head(a)) {
      violations.push_back("self-loop at arc " + instance.arc_name(a));
    }
  }
  return violations;
}

Rational Excess(const Instance& instance, const Flow& flow, VertexId v) {
  CheckFlowSize(instance, flow);
  if (!instance.HasVertex(v)) {
    throw Error(ErrorCode::kInvalidInput,
                "unknown vertex " + std::to_string(v));
  }
  Rational excess = 0;
  for (ArcId a : instance.out_arcs(v)) excess += flow[a];
  for (ArcId a : instance.in_arcs(v)) excess -= flow[a];
  return excess;
}

std::vector<std::string> TransshipmentViolations(const Instance& instance,
                                                 const Flow& flow) {
  CheckFlowSize(instance, flow);
  std::vector<std::string> violations;
  for (ArcId a = 0; a < instance.num_arcs(); ++a) {
    if (flow[a] < 0) {
      violations.push_back("negative flow on arc " + instance.arc_name(a));
    }
  }
  for (VertexId v = 0; v < instance.num_vertices(); ++v) {
    const Rational excess = Excess(instance, flow, v);
    if (excess != instance.balance(v)) {
      violations.push_back("excess " + FormatRational(excess) + " != balance " +
                           FormatRational(instance.balance(v)) +
                           " at vertex " + instance.vertex_name(v));
    }
  }
  return violations;
}

bool IsTransshipment(const Instance& instance, const Flow& flow) {
  return TransshipmentViolations(instance, flow).empty();
}

bool IsCapacityFeasible(const Instance& instance, const Flow& flow) {
  CheckFlowSize(instance, flow);
  for (ArcId a = 0; a < instance.num_arcs(); ++a) {
    if (flow[a] > instance.capacity(a)) return false;
  }
  return true;
}

Decomposition Decompose(const Instance& instance, const Flow& flow) {
  if (auto violations = TransshipmentViolations(instance, flow);
      !violations.empty()) {
    throw Error(ErrorCode::kNotTransshipment, violations.front());
  }
  const int n = instance.num_vertices();
  Flow rest = flow;
  std::vector<Rational> remaining(n);
  for (VertexId v = 0; v < n; ++v) remaining[v] = instance.balance(v);

  Decomposition result;
  auto first_positive_out = [&](VertexId v) {
    for (ArcId a : instance.out_arcs(v)) {
      if (rest[a] > 0) return a;
    }
    return kNoArc;
  };

  // Walks from `start` along positive arcs. Stops at the first sink with
  // remaining demand (when `to_sink`) or at the first repeated vertex.
  auto extract = [&](VertexId start, bool to_sink) {
    std::vector<ArcId> walk;
    std::vector<int> position(n, -1);
    position[start] = 0;
    VertexId v = start;
    while (true) {
      if (to_sink && v != start && remaining[v] < 0) {
        Rational value = std::min(remaining[start], Rational(-remaining[v]));
        for (ArcId a : walk) value = std::min(value, rest[a]);
        for (ArcId a : walk) rest[a] -= value;
        remaining[start] -= value;
        remaining[v] += value;
        result.paths.push_back(PathFlow{start, v, value, walk});
        return;
      }
      const ArcId a = first_positive_out(v);
      if (a == kNoArc) {
        throw Error(ErrorCode::kInternal, "decomposition walk got stuck");
      }
      walk.push_back(a);
      v = instance.head(a);
      if (position[v] >= 0) {
        std::vector<ArcId> cycle(walk.begin() + position[v], walk.end());
        Rational value = rest[cycle.front()];
        for (ArcId c : cycle) value = std::min(value, rest[c]);
        for (ArcId c : cycle) rest[c] -= value;
        result.cycles.push_back(CycleFlow{std::move(cycle), value});
        return;
      }
      position[v] = static_cast<int>(walk.size());
    }
  };

  for (VertexId s = 0; s < n; ++s) {
    while (remaining[s] > 0) extract(s, /*to_sink=*/true);
  }
  for (ArcId a = 0; a < instance.num_arcs(); ++a) {
    while (rest[a] > 0) extract(instance.tail(a), /*to_sink=*/false);
  }
  return result;
}

Flow CancelCycles(const Instance& instance, const Flow& flow) {
  CheckFlowSize(instance, flow);
  Flow result = flow;
  while (auto cycle = FindPositiveCycle(instance, result)) {
    Rational value = result[cycle->front()];
    for (ArcId a : *cycle) value = std::min(value, result[a]);
    for (ArcId a : *cycle) result[a] -= value;
  }
  return result;
}

std::vector<VertexId> TopologicalOrder(const Instance& instance,
                                       const std::vector<bool>& arc_mask) {
  const int n = instance.num_vertices();
  std::vector<int> indegree(n, 0);
  for (ArcId a = 0; a < instance.num_arcs(); ++a) {
    if (arc_mask[a]) ++indegree[instance.head(a)];
  }
  std::deque<VertexId> ready;
  for (VertexId v = 0; v < n; ++v) {
    if (indegree[v] == 0) ready.push_back(v);
  }
  std::vector<VertexId> order;
  order.reserve(n);
  while (!ready.empty()) {
    const VertexId v = ready.front();
    ready.pop_front();
    order.push_back(v);
    for (ArcId a : instance.out_arcs(v)) {
      if (arc_mask[a] && --indegree[instance.head(a)] == 0) {
        ready.push_back(instance.head(a));
      }
    }
  }
  if (static_cast<int>(order.size()) != n) {
    throw Error(ErrorCode::kCyclicSupport, "digraph contains a cycle");
  }
  return order;
}

std::vector<VertexId> SupportTopologicalOrder(const Instance& instance,
                                              const Flow& flow) {
  CheckFlowSize(instance, flow);
  std::vector<bool> mask(instance.num_arcs());
  for (ArcId a = 0; a < instance.num_arcs(); ++a) mask[a] = flow[a] > 0;
  return TopologicalOrder(instance, mask);
}

Flow Superpose(const Instance& instance, const std::vector<PathFlow>& paths) {
  Flow flow(instance.num_arcs());
  for (const PathFlow& path : paths) {
    for (ArcId a : path.arcs) flow[a] += path.value;
  }
  return flow;
}

Flow Superpose(const Instance& instance, const UnsplittableSolution& solution) {
  return Superpose(instance, solution.paths);
}

std::vector<VertexId> PathVertices(const Instance& instance,
                                   const std::vector<ArcId>& arcs) {
  if (arcs.empty()) return {};
  std::vector<VertexId> vertices = {instance.tail(arcs.front())};
  for (ArcId a : arcs) {
    if (a < 0 || a >= instance.num_arcs() ||
        instance.tail(a) != vertices.back()) {
      return {};
    }
    vertices.push_back(instance.head(a));
  }
  return vertices;
}

}  // namespace unsplit
