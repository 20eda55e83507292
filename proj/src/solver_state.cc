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

#include "unsplit/solver_state.h"

#include <algorithm>
#include <map>
#include <optional>

#include "unsplit/error.h"
#include "unsplit/flow_ops.h"

namespace unsplit {

struct SolverState::BackwardSearch {
  bool found = false;
  VertexId turn = kNoVertex;
  // Arcs from the junction back to `turn`, in traversal order.
  std::vector<ArcId> path;
  std::vector<ArcId> explored_arcs;
  std::vector<VertexId> explored_vertices;
};

SolverState::SolverState(Instance network, const Flow& flow, VertexId root,
                         CycleRule rule, SolverOptions options)
    : network_(std::move(network)),
      root_(root),
      rule_(rule),
      options_(options),
      flow_(flow) {
  const int n = network_.num_vertices();
  const int m = network_.num_arcs();
  if (!network_.HasVertex(root_)) {
    throw Error(ErrorCode::kInvalidInput, "root is not a vertex");
  }
  for (VertexId v = 0; v < n; ++v) {
    if (v != root_ && network_.IsSource(v)) {
      throw Error(ErrorCode::kPrecondition,
                  "network has a second source " + network_.vertex_name(v));
    }
  }
  if (auto violations = TransshipmentViolations(network_, flow_);
      !violations.empty()) {
    throw Error(ErrorCode::kNotTransshipment, violations.front());
  }
  SupportTopologicalOrder(network_, flow_);  // throws on a cycle

  live_.assign(m, false);
  out_degree_.assign(n, 0);
  in_degree_.assign(n, 0);
  for (ArcId a = 0; a < m; ++a) {
    if (flow_[a] > 0) {
      live_[a] = true;
      ++out_degree_[network_.tail(a)];
      ++in_degree_[network_.head(a)];
    }
  }
  singular_.assign(m, false);
  labeled_once_.assign(m, false);
  next_split_.assign(n, 1);
  component_.resize(n);
  for (int v = 0; v < n; ++v) component_[v] = v;
  for (VertexId v = 0; v < n; ++v) {
    if (network_.IsSink(v)) {
      subsinks_.push_back(SubSink{v, 0, v, network_.Demand(v), {}, false});
    }
  }
  delivered_via_.assign(subsinks_.size(), kNoVertex);
}

void SolverState::Fail(const std::string& message) const {
  throw Error(ErrorCode::kInternal,
              "iteration " + std::to_string(iteration_) + ": " + message);
}

void SolverState::Record(SolverEvent e) {
  if (options_.record_events) events_.push_back(std::move(e));
}

int SolverState::FindComponent(int v) const {
  while (component_[v] != v) {
    component_[v] = component_[component_[v]];
    v = component_[v];
  }
  return v;
}

std::vector<ArcId> SolverState::LiveOutArcs(VertexId v) const {
  std::vector<ArcId> result;
  for (ArcId a : network_.out_arcs(v)) {
    if (live_[a]) result.push_back(a);
  }
  return result;
}

std::vector<ArcId> SolverState::LiveInArcs(VertexId v) const {
  std::vector<ArcId> result;
  for (ArcId a : network_.in_arcs(v)) {
    if (live_[a]) result.push_back(a);
  }
  return result;
}

bool SolverState::Precedes(int a, int b) const {
  const SubSink& x = subsinks_[a];
  const SubSink& y = subsinks_[b];
  if (x.demand != y.demand) return x.demand > y.demand;
  if (x.sink != y.sink) return x.sink < y.sink;
  return x.split < y.split;
}

std::vector<int> SolverState::SubSinksAt(VertexId v) const {
  std::vector<int> result;
  for (int i = 0; i < static_cast<int>(subsinks_.size()); ++i) {
    if (!subsinks_[i].delivered && subsinks_[i].location == v) {
      result.push_back(i);
    }
  }
  std::sort(result.begin(), result.end(),
            [this](int a, int b) { return Precedes(a, b); });
  return result;
}

bool SolverState::Done() const {
  return std::all_of(subsinks_.begin(), subsinks_.end(),
                     [](const SubSink& s) { return s.delivered; });
}

void SolverState::DeleteArc(ArcId a) {
  if (!live_[a]) return;
  live_[a] = false;
  --out_degree_[network_.tail(a)];
  --in_degree_[network_.head(a)];
  Record(event::DeleteArc{iteration_, a});
}

void SolverState::MoveAlong(int index, ArcId arc) {
  SubSink& sub = subsinks_[index];
  if (!live_[arc] || network_.head(arc) != sub.location ||
      flow_[arc] < sub.demand) {
    Fail("illegal move along arc " + network_.arc_name(arc));
  }
  const Rational before = flow_[arc];
  flow_[arc] -= sub.demand;
  sub.trace.push_back(arc);
  sub.location = network_.tail(arc);
  Record(event::Move{iteration_, index, arc, before, flow_[arc],
                     static_cast<bool>(singular_[arc])});
  if (singular_[arc] && iteration_ > 0) {
    singular_moves_this_iteration_.push_back(arc);
  }
  if (flow_[arc] == 0) DeleteArc(arc);
  if (sub.location == root_) {
    sub.delivered = true;
    OnDeliver(index, rule_ == CycleRule::kNiceOnly ? network_.head(arc)
                                                   : root_);
  }
}

void SolverState::OnDeliver(int index, VertexId source) {
  delivered_via_[index] = source;
  Record(event::Deliver{iteration_, index, source});
  const int a = FindComponent(source);
  const int b = FindComponent(subsinks_[index].sink);
  if (a == b) {
    if (options_.check_invariants) {
      Fail("source-sink graph gains a cycle at " +
           network_.vertex_name(source) + "-" +
           network_.vertex_name(subsinks_[index].sink));
    }
    return;
  }
  component_[a] = b;
}

int SolverState::SplitOff(int parent, const Rational& child_demand) {
  if (child_demand <= 0 || child_demand >= subsinks_[parent].demand) {
    Fail("degenerate split");
  }
  SubSink child = subsinks_[parent];
  child.split = next_split_[child.sink]++;
  child.demand = child_demand;
  subsinks_[parent].demand -= child_demand;
  subsinks_.push_back(std::move(child));
  delivered_via_.push_back(kNoVertex);
  const int index = static_cast<int>(subsinks_.size()) - 1;
  Record(event::Split{iteration_, parent, index, subsinks_[parent].demand,
                      child_demand});
  return index;
}

void SolverState::RunPreliminaryPhase() {
  bool changed = true;
  while (changed) {
    changed = false;
    for (ArcId a = 0; a < network_.num_arcs(); ++a) {
      while (live_[a]) {
        int mover = -1;
        for (int i : SubSinksAt(network_.head(a))) {
          if (subsinks_[i].demand <= flow_[a]) {
            mover = i;
            break;
          }
        }
        if (mover < 0) break;
        MoveAlong(mover, a);
        changed = true;
      }
    }
  }
}

void SolverState::Label() {
  const int n = network_.num_vertices();
  const std::vector<VertexId> order = TopologicalOrder(network_, live_);
  // settled[v]: v and everything reachable from it has out-degree <= 1.
  std::vector<bool> settled(n, false);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const VertexId v = *it;
    bool ok = out_degree_[v] <= 1;
    for (ArcId a : network_.out_arcs(v)) {
      if (live_[a] && !settled[network_.head(a)]) ok = false;
    }
    settled[v] = ok;
  }
  for (ArcId a = 0; a < network_.num_arcs(); ++a) {
    const bool now = live_[a] && settled[network_.head(a)];
    if (options_.check_invariants && labeled_once_[a] && live_[a] && !now) {
      Fail("arc " + network_.arc_name(a) + " stopped being singular");
    }
    singular_[a] = now;
    if (now) labeled_once_[a] = true;
  }
}

VertexId SolverState::ChooseStart() const {
  const bool skip_root = rule_ == CycleRule::kNiceOnly;
  for (VertexId v = 0; v < network_.num_vertices(); ++v) {
    if (skip_root && v == root_) continue;
    if (out_degree_[v] >= 2) return v;
  }
  for (VertexId v = 0; v < network_.num_vertices(); ++v) {
    if (skip_root && v == root_) continue;
    if (out_degree_[v] >= 1) return v;
  }
  return kNoVertex;
}

SolverState::BackwardSearch SolverState::SearchBackward(
    VertexId junction, ArcId entry_arc,
    const std::vector<int>& walk_position) const {
  struct Frame {
    std::vector<ArcId> in;
    size_t next = 0;
    ArcId via = kNoArc;
  };
  BackwardSearch result;
  std::vector<Frame> stack;
  {
    Frame first;
    for (ArcId a : LiveInArcs(junction)) {
      if (a != entry_arc) first.in.push_back(a);
    }
    stack.push_back(std::move(first));
  }
  result.explored_vertices.push_back(junction);
  while (!stack.empty()) {
    if (stack.back().next == stack.back().in.size()) {
      stack.pop_back();
      continue;
    }
    const ArcId b = stack.back().in[stack.back().next++];
    const VertexId u = network_.tail(b);
    result.explored_arcs.push_back(b);
    if (rule_ == CycleRule::kNiceOnly && u == root_) continue;
    if (walk_position[u] >= 0 || out_degree_[u] >= 2) {
      result.found = true;
      result.turn = u;
      for (size_t i = 1; i < stack.size(); ++i) {
        result.path.push_back(stack[i].via);
      }
      result.path.push_back(b);
      return result;
    }
    result.explored_vertices.push_back(u);
    stack.push_back(Frame{LiveInArcs(u), 0, b});
  }
  return result;
}

SearchResult SolverState::FindStructure() {
  const VertexId start = ChooseStart();
  if (start == kNoVertex) Fail("no vertex with outgoing arcs");
  return FindStructure(start);
}

SearchResult SolverState::FindStructure(VertexId start) {
  const int n = network_.num_vertices();
  std::vector<int> position(n, -1);
  std::vector<CycleStep> steps;
  position[start] = 0;
  auto close_at = [&](VertexId v) {
    NiceCycle cycle;
    cycle.steps.assign(steps.begin() + position[v], steps.end());
    return cycle;
  };

  VertexId current = start;
  ArcId avoid = kNoArc;
  while (true) {
    ArcId last_forward = kNoArc;
    while (true) {
      ArcId next = kNoArc;
      for (ArcId a : network_.out_arcs(current)) {
        if (live_[a] && a != avoid) {
          next = a;
          break;
        }
      }
      avoid = kNoArc;
      if (next == kNoArc) break;
      steps.push_back(CycleStep{next, true});
      const VertexId v = network_.head(next);
      if (position[v] >= 0) return close_at(v);
      position[v] = static_cast<int>(steps.size());
      current = v;
      last_forward = next;
    }
    if (last_forward == kNoArc) {
      Fail("forward path cannot leave " + network_.vertex_name(current));
    }

    BackwardSearch search = SearchBackward(current, last_forward, position);
    if (!search.found) {
      if (rule_ == CycleRule::kClassic) {
        Fail("backward search from junction " + network_.vertex_name(current) +
             " found no turning vertex");
      }
      return SingularDigraph{current, last_forward,
                             std::move(search.explored_arcs),
                             std::move(search.explored_vertices)};
    }
    for (ArcId b : search.path) {
      steps.push_back(CycleStep{b, false});
      const VertexId v = network_.tail(b);
      if (position[v] >= 0) return close_at(v);
      position[v] = static_cast<int>(steps.size());
    }
    current = search.turn;
    avoid = search.path.back();
  }
}

Rational SolverState::AugmentationAmount(const NiceCycle& cycle) const {
  const bool upper = options_.direction == BoundDirection::kUpper;
  std::optional<Rational> amount;
  auto lower_to = [&](const Rational& value) {
    if (!amount || value < *amount) amount = value;
  };
  for (const CycleStep& step : cycle.steps) {
    const bool decreases = step.forward == upper;
    if (decreases) {
      lower_to(flow_[step.arc]);
    } else {
      for (int i : SubSinksAt(network_.head(step.arc))) {
        if (subsinks_[i].demand > flow_[step.arc]) {
          lower_to(subsinks_[i].demand - flow_[step.arc]);
        }
      }
    }
  }
  if (!amount) Fail("cycle has no decreasing arc");
  return *amount;
}

void SolverState::AugmentNiceCycle(const NiceCycle& cycle) {
  if (cycle.steps.empty()) Fail("empty cycle");
  for (const CycleStep& step : cycle.steps) {
    if (!live_[step.arc]) Fail("cycle uses a deleted arc");
    if (rule_ == CycleRule::kNiceOnly &&
        (network_.tail(step.arc) == root_ || network_.head(step.arc) == root_)) {
      Fail("cycle passes through the super-source");
    }
  }
  const Rational amount = AugmentationAmount(cycle);
  if (amount <= 0) Fail("non-positive augmentation amount");
  const bool upper = options_.direction == BoundDirection::kUpper;
  Record(event::Augment{iteration_, cycle.steps, amount});
  for (const CycleStep& step : cycle.steps) {
    if (step.forward == upper) {
      flow_[step.arc] -= amount;
    } else {
      flow_[step.arc] += amount;
    }
  }
  for (const CycleStep& step : cycle.steps) {
    if (flow_[step.arc] < 0) Fail("augmentation made a flow negative");
    if (flow_[step.arc] == 0) DeleteArc(step.arc);
  }
}

void SolverState::RouteSingularDigraph(const SingularDigraph& digraph) {
  const VertexId junction = digraph.root;
  const ArcId entry = digraph.entry_arc;
  if (!live_[entry] || network_.head(entry) != junction) {
    Fail("singular digraph entry arc is not live");
  }

  int chosen = -1;
  for (int i : SubSinksAt(junction)) {
    if (subsinks_[i].demand > flow_[entry]) {
      chosen = i;
      break;
    }
  }
  if (chosen < 0) {
    Fail("no sub-sink at junction " + network_.vertex_name(junction) +
         " exceeds the entry flow");
  }
  const int routed = SplitOff(
      chosen, Rational(subsinks_[chosen].demand - flow_[entry]));
  Record(event::RouteSingular{iteration_, junction, entry, digraph.arcs,
                              chosen, routed});

  std::vector<VertexId> tree = digraph.vertices;
  std::sort(tree.begin(), tree.end());
  std::vector<bool> in_tree(network_.num_vertices(), false);
  for (VertexId v : tree) in_tree[v] = true;

  // Sub-sink to serve at `x`: at the junction others go before the routed
  // part of the split sink, which goes before nothing; `chosen` stays.
  auto pick_at = [&](VertexId x) {
    int routed_here = -1;
    for (int i : SubSinksAt(x)) {
      if (i == chosen) continue;
      if (i == routed) {
        routed_here = i;
        continue;
      }
      return i;
    }
    return routed_here;
  };

  while (true) {
    VertexId leaf = kNoVertex;
    ArcId dummy = kNoArc;
    for (VertexId v : tree) {
      ArcId from_root = kNoArc;
      bool inner = false;
      for (ArcId a : LiveInArcs(v)) {
        if (a == entry) continue;
        if (network_.tail(a) == root_ && from_root == kNoArc) {
          from_root = a;
        } else {
          inner = true;
        }
      }
      if (from_root != kNoArc && !inner) {
        leaf = v;
        dummy = from_root;
        break;
      }
    }
    if (leaf == kNoVertex) break;

    std::vector<ArcId> path = {dummy};
    VertexId x = leaf;
    int target = pick_at(x);
    while (target < 0 && x != junction) {
      const std::vector<ArcId> out = LiveOutArcs(x);
      if (out.size() != 1) Fail("in-tree vertex is not a funnel");
      path.push_back(out.front());
      x = network_.head(out.front());
      if (!in_tree[x]) Fail("in-tree path leaves the singular digraph");
      target = pick_at(x);
    }
    if (target < 0) Fail("singular digraph flow serves no sub-sink");

    Rational bottleneck = flow_[path.front()];
    for (ArcId a : path) bottleneck = std::min(bottleneck, flow_[a]);
    int mover = target;
    if (subsinks_[target].demand > bottleneck) {
      mover = SplitOff(target, bottleneck);
    }
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
      MoveAlong(mover, *it);
    }
  }

  for (ArcId a : digraph.arcs) {
    if (live_[a]) {
      Fail("flow left on singular digraph arc " + network_.arc_name(a));
    }
  }
  for (VertexId v : tree) {
    for (int i : SubSinksAt(v)) {
      if (i != chosen) Fail("sub-sink left inside the singular digraph");
    }
  }
  if (flow_[entry] != subsinks_[chosen].demand) {
    Fail("entry arc flow differs from the kept demand");
  }
  MoveAlong(chosen, entry);
}

void SolverState::MoveSinks() {
  bool moved = true;
  while (moved) {
    moved = false;
    std::vector<int> order;
    for (int i = 0; i < static_cast<int>(subsinks_.size()); ++i) {
      if (!subsinks_[i].delivered) order.push_back(i);
    }
    std::sort(order.begin(), order.end(),
              [this](int a, int b) { return Precedes(a, b); });
    for (int i : order) {
      if (subsinks_[i].delivered) continue;
      const std::vector<ArcId> in = LiveInArcs(subsinks_[i].location);
      ArcId choice = kNoArc;
      for (ArcId a : in) {
        if (singular_[a] && flow_[a] == subsinks_[i].demand) {
          choice = a;
          break;
        }
      }
      if (choice == kNoArc) {
        for (ArcId a : in) {
          if (!singular_[a] && flow_[a] >= subsinks_[i].demand) {
            choice = a;
            break;
          }
        }
      }
      if (choice != kNoArc) {
        MoveAlong(i, choice);
        moved = true;
      }
    }
  }
}

void SolverState::RunIteration() {
  ++iteration_;
  if (iteration_ > options_.max_iterations) Fail("iteration limit exceeded");
  Label();
  singular_moves_this_iteration_.clear();
  std::vector<Rational> before;
  if (options_.check_invariants) before = flow_.values();

  SearchResult found = FindStructure();
  if (auto* cycle = std::get_if<NiceCycle>(&found)) {
    AugmentNiceCycle(*cycle);
  } else {
    RouteSingularDigraph(std::get<SingularDigraph>(found));
  }
  MoveSinks();

  if (!options_.check_invariants) return;
  for (ArcId a : singular_moves_this_iteration_) {
    if (live_[a]) {
      Fail("invariant (iii): singular arc " + network_.arc_name(a) +
           " used by a move survives the iteration");
    }
  }
  if (options_.direction == BoundDirection::kUpper) {
    for (ArcId a = 0; a < network_.num_arcs(); ++a) {
      if (!singular_[a] && flow_[a] > before[a]) {
        Fail("flow increased on non-singular arc " + network_.arc_name(a));
      }
    }
  }
  CheckIterationInvariants();
}

void SolverState::CheckIterationInvariants() {
  ++invariant_checks_;
  if (auto violations = CheckStateInvariants(); !violations.empty()) {
    Fail(violations.front());
  }
  CheckBipartiteComponents();
}

void SolverState::CheckBipartiteComponents() const {
  // Every component of the source-sink graph holds at most one active
  // terminal: a source with a live outgoing arc or a sink with an
  // undelivered piece.
  std::map<int, int> active;
  for (VertexId v = 0; v < network_.num_vertices(); ++v) {
    if (v == root_ && rule_ == CycleRule::kNiceOnly) continue;
    bool is_active = false;
    if (network_.IsSink(v)) {
      is_active = std::any_of(subsinks_.begin(), subsinks_.end(),
                              [v](const SubSink& s) {
                                return s.sink == v && !s.delivered;
                              });
    } else if (network_.IsSource(v) || rule_ == CycleRule::kNiceOnly) {
      // In kNiceOnly mode sources are the heads of the dummy arcs.
      bool is_source = network_.IsSource(v);
      for (ArcId a : network_.in_arcs(v)) {
        if (network_.tail(a) == root_) is_source = true;
      }
      if (is_source) is_active = out_degree_[v] > 0;
    }
    if (is_active && ++active[FindComponent(v)] > 1) {
      Fail("component of " + network_.vertex_name(v) +
           " holds two active terminals");
    }
  }
}

std::vector<std::string> SolverState::CheckStateInvariants() const {
  std::vector<std::string> violations;
  const int n = network_.num_vertices();
  std::vector<Rational> pending(n);
  Rational total_pending = 0;
  for (const SubSink& s : subsinks_) {
    if (s.delivered) continue;
    pending[s.location] += s.demand;
    total_pending += s.demand;
  }
  for (VertexId v = 0; v < n; ++v) {
    Rational net_in = 0;
    for (ArcId a : network_.in_arcs(v)) net_in += flow_[a];
    for (ArcId a : network_.out_arcs(v)) net_in -= flow_[a];
    const Rational expected = v == root_ ? Rational(-total_pending) : pending[v];
    if (net_in != expected) {
      violations.push_back("invariant (i): flow does not meet the demands at " +
                           network_.vertex_name(v));
    }
  }
  for (VertexId v = 0; v < n; ++v) {
    if (v == root_) continue;
    const std::vector<int> here = SubSinksAt(v);
    if (here.empty()) continue;
    int irregular = 0;
    for (int i : here) {
      for (ArcId a : network_.in_arcs(v)) {
        if (live_[a] && flow_[a] >= subsinks_[i].demand) {
          ++irregular;
          break;
        }
      }
    }
    const std::string name = network_.vertex_name(v);
    if (irregular > 1) {
      violations.push_back("invariant (ii): two irregular sinks at " + name);
    }
    if (irregular == 1 && out_degree_[v] != 0) {
      violations.push_back("invariant (ii): irregular sink at " + name +
                           " which has outgoing arcs");
    }
    if (irregular == 1 && here.size() < 2) {
      violations.push_back("invariant (ii): irregular sink alone at " + name);
    }
    if (in_degree_[v] < 2) {
      violations.push_back("invariant (ii): sink vertex " + name +
                           " has fewer than two incoming arcs");
    }
  }
  return violations;
}

void SolverState::Run() {
  RunPreliminaryPhase();
  if (options_.check_invariants) CheckIterationInvariants();
  while (!Done()) RunIteration();
  for (ArcId a = 0; a < network_.num_arcs(); ++a) {
    if (live_[a]) Fail("flow remains after all sinks reached the root");
  }
}

}  // namespace unsplit
