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

#include "unsplit/fractional.h"

#include <deque>
#include <string>

#include "unsplit/error.h"
#include "unsplit/flow_ops.h"

namespace unsplit {
namespace {

// Residual network over the instance plus a super-source (index n) and a
// super-sink (index n + 1). Edge 2k is forward, 2k + 1 its reverse.
class ResidualNetwork {
 public:
  explicit ResidualNetwork(int num_vertices) : adjacency_(num_vertices) {}

  int AddEdge(int from, int to, const Rational& capacity) {
    const int id = static_cast<int>(to_.size());
    to_.push_back(to);
    residual_.push_back(capacity);
    adjacency_[from].push_back(id);
    to_.push_back(from);
    residual_.push_back(0);
    adjacency_[to].push_back(id + 1);
    return id;
  }

  // Edmonds-Karp. Returns the flow value.
  Rational MaxFlow(int source, int sink) {
    Rational total = 0;
    const int n = static_cast<int>(adjacency_.size());
    while (true) {
      std::vector<int> via(n, -1);
      std::vector<bool> seen(n, false);
      std::deque<int> queue = {source};
      seen[source] = true;
      while (!queue.empty() && !seen[sink]) {
        const int v = queue.front();
        queue.pop_front();
        for (int e : adjacency_[v]) {
          if (residual_[e] > 0 && !seen[to_[e]]) {
            seen[to_[e]] = true;
            via[to_[e]] = e;
            queue.push_back(to_[e]);
          }
        }
      }
      if (!seen[sink]) return total;
      Rational bottleneck = residual_[via[sink]];
      for (int v = sink; v != source; v = to_[via[v] ^ 1]) {
        bottleneck = std::min(bottleneck, residual_[via[v]]);
      }
      for (int v = sink; v != source; v = to_[via[v] ^ 1]) {
        residual_[via[v]] -= bottleneck;
        residual_[via[v] ^ 1] += bottleneck;
      }
      total += bottleneck;
    }
  }

  std::vector<bool> ReachableFrom(int source) const {
    std::vector<bool> seen(adjacency_.size(), false);
    std::deque<int> queue = {source};
    seen[source] = true;
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop_front();
      for (int e : adjacency_[v]) {
        if (residual_[e] > 0 && !seen[to_[e]]) {
          seen[to_[e]] = true;
          queue.push_back(to_[e]);
        }
      }
    }
    return seen;
  }

  // Flow on forward edge `id` = residual of its reverse.
  const Rational& FlowOn(int id) const { return residual_[id + 1]; }

 private:
  std::vector<std::vector<int>> adjacency_;
  std::vector<int> to_;
  std::vector<Rational> residual_;
};

}  // namespace

FractionalResult SolveFractional(const Instance& instance) {
  if (auto violations = ValidateInstance(instance); !violations.empty()) {
    throw Error(ErrorCode::kInvalidInput, violations.front());
  }
  const int n = instance.num_vertices();
  const int super_source = n;
  const int super_sink = n + 1;
  ResidualNetwork network(n + 2);
  std::vector<int> edge_of_arc(instance.num_arcs());
  for (ArcId a = 0; a < instance.num_arcs(); ++a) {
    edge_of_arc[a] =
        network.AddEdge(instance.tail(a), instance.head(a), instance.capacity(a));
  }
  for (VertexId v = 0; v < n; ++v) {
    if (instance.IsSource(v)) {
      network.AddEdge(super_source, v, instance.balance(v));
    } else if (instance.IsSink(v)) {
      network.AddEdge(v, super_sink, instance.Demand(v));
    }
  }

  FractionalResult result;
  result.max_flow_value = network.MaxFlow(super_source, super_sink);
  const Rational required = instance.TotalDemand();
  if (result.max_flow_value == required) {
    Flow flow(instance.num_arcs());
    for (ArcId a = 0; a < instance.num_arcs(); ++a) {
      flow[a] = network.FlowOn(edge_of_arc[a]);
    }
    result.feasible = true;
    result.flow = CancelCycles(instance, flow);
    return result;
  }

  // The residual-reachable set is a minimum cut; its capacity equals the
  // max-flow value, which is short of the demand.
  const std::vector<bool> reachable = network.ReachableFrom(super_source);
  CutWitness& witness = result.witness;
  witness.capacity = 0;
  witness.required = 0;
  for (VertexId v = 0; v < n; ++v) {
    if (!reachable[v]) continue;
    witness.source_side.push_back(v);
    witness.required += instance.balance(v);
  }
  for (ArcId a = 0; a < instance.num_arcs(); ++a) {
    if (reachable[instance.tail(a)] && !reachable[instance.head(a)]) {
      witness.capacity += instance.capacity(a);
    }
  }
  return result;
}

}  // namespace unsplit
