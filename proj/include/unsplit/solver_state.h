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

#ifndef UNSPLIT_SOLVER_STATE_H_
#define UNSPLIT_SOLVER_STATE_H_

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "unsplit/graph.h"

namespace unsplit {

// Which way flow is pushed around a nice alternating cycle. kUpper
// decreases forward arcs and increases backward (singular) arcs, giving
// y_a < x_a + d_max; kLower pushes the opposite way, giving y_a > x_a - d_max.
enum class BoundDirection { kUpper, kLower };

// kNiceOnly: the root is a super-source whose dummy arcs must keep their
// flow. Cycles through the root are forbidden and singular digraphs are
// routed explicitly. kClassic: single-source DGG, the root is an ordinary
// vertex and every search ends in an alternating cycle.
enum class CycleRule { kNiceOnly, kClassic };

struct SolverOptions {
  BoundDirection direction = BoundDirection::kUpper;
  // Assert invariants (i)-(iii), the bipartite-forest property and the
  // label monotonicity after every iteration; violations throw kInternal.
  bool check_invariants = false;
  bool record_events = true;
  int64_t max_iterations = 10'000'000;
};

// A sink or a piece of one. `split` is a per-sink counter; the original
// sink has split 0.
struct SubSink {
  VertexId sink = kNoVertex;
  int split = 0;
  VertexId location = kNoVertex;
  Rational demand;
  // Arcs traversed so far, most recent last (i.e. in backward order).
  std::vector<ArcId> trace;
  bool delivered = false;
};

struct CycleStep {
  ArcId arc = kNoArc;
  bool forward = true;

  bool operator==(const CycleStep& other) const = default;
};

// Alternating cycle avoiding the root (in kClassic mode any alternating
// cycle). Steps are in traversal order.
struct NiceCycle {
  std::vector<CycleStep> steps;
};

// Explored part of a backward search from `root` that found no usable
// turning vertex. Minus the super-source it is an in-tree rooted at `root`.
struct SingularDigraph {
  VertexId root = kNoVertex;
  ArcId entry_arc = kNoArc;  // forward arc a' used to reach `root`
  std::vector<ArcId> arcs;
  std::vector<VertexId> vertices;  // includes root, excludes the super-source
};

using SearchResult = std::variant<NiceCycle, SingularDigraph>;

namespace event {

struct Move {
  int iteration;
  int subsink;
  ArcId arc;
  Rational flow_before;
  Rational flow_after;
  bool along_singular;
};
struct Split {
  int iteration;
  int parent;
  int child;
  Rational parent_demand;  // after the split
  Rational child_demand;
};
struct Augment {
  int iteration;
  std::vector<CycleStep> cycle;
  Rational amount;
};
struct DeleteArc {
  int iteration;
  ArcId arc;
};
struct RouteSingular {
  int iteration;
  VertexId root;
  ArcId entry_arc;
  std::vector<ArcId> arcs;
  int split_subsink;  // the sub-sink t split into t1 (kept) and t2
  int routed_part;    // t2
};
struct Deliver {
  int iteration;
  int subsink;
  VertexId source;
};

}  // namespace event

using SolverEvent =
    std::variant<event::Move, event::Split, event::Augment, event::DeleteArc,
                 event::RouteSingular, event::Deliver>;

// Mutable state of one DGG run on a single-source network: the working flow
// y, live arcs, sub-sinks, labels and the event log. The network must have
// exactly one vertex of positive balance, `root`, and sinks with negative
// balance; `flow` must satisfy those balances on an acyclic support.
//
// Run() executes the preliminary phase and then iterations until every
// sub-sink reached the root. The individual steps are public so tests can
// drive and inspect them.
class SolverState {
 public:
  SolverState(Instance network, const Flow& flow, VertexId root,
              CycleRule rule, SolverOptions options = {});

  void Run();

  // Preliminary phase: while some live arc (v, u) carries y >= d of a
  // sub-sink at u, move it to v. Sweeps arcs in ascending id.
  void RunPreliminaryPhase();
  // Recomputes singular-arc and funnel labels for the current live digraph.
  void Label();
  // Alternating-cycle search from the deterministic start vertex.
  SearchResult FindStructure();
  SearchResult FindStructure(VertexId start);
  void AugmentNiceCycle(const NiceCycle& cycle);
  void RouteSingularDigraph(const SingularDigraph& digraph);
  // DGG moving rules, applied until no move is possible.
  void MoveSinks();
  // One full iteration (label, search, augment or route, move).
  void RunIteration();

  bool Done() const;
  VertexId ChooseStart() const;

  // Augmentation amount for `cycle` under the configured direction.
  Rational AugmentationAmount(const NiceCycle& cycle) const;

  // Violations of invariants (i) and (ii) in the current state.
  std::vector<std::string> CheckStateInvariants() const;

  const Instance& network() const { return network_; }
  VertexId root() const { return root_; }
  const Rational& flow(ArcId a) const { return flow_[a]; }
  const Flow& flow() const { return flow_; }
  bool live(ArcId a) const { return live_[a]; }
  bool singular(ArcId a) const { return singular_[a]; }
  bool funnel(VertexId v) const { return out_degree_[v] <= 1; }
  int out_degree(VertexId v) const { return out_degree_[v]; }
  int in_degree(VertexId v) const { return in_degree_[v]; }
  const std::vector<SubSink>& subsinks() const { return subsinks_; }
  std::vector<int> SubSinksAt(VertexId v) const;
  const std::vector<SolverEvent>& events() const { return events_; }
  int iteration() const { return iteration_; }
  int64_t invariant_checks() const { return invariant_checks_; }

  // Source reached by a delivered sub-sink (the root in kClassic mode).
  VertexId DeliveredVia(int subsink) const { return delivered_via_[subsink]; }

 private:
  std::vector<ArcId> LiveOutArcs(VertexId v) const;
  std::vector<ArcId> LiveInArcs(VertexId v) const;
  void Record(SolverEvent e);
  void DeleteArc(ArcId a);
  // Moves `subsink` backwards along `arc`, reducing y by its demand.
  void MoveAlong(int subsink, ArcId arc);
  int SplitOff(int parent, const Rational& child_demand);
  // Sub-sink order: larger demand first, then (sink, split) ascending.
  bool Precedes(int a, int b) const;
  void Fail(const std::string& message) const;
  void CheckIterationInvariants();
  void CheckBipartiteComponents() const;
  void OnDeliver(int subsink, VertexId source);

  struct BackwardSearch;
  BackwardSearch SearchBackward(VertexId junction, ArcId entry_arc,
                                const std::vector<int>& walk_position) const;

  Instance network_;
  VertexId root_;
  CycleRule rule_;
  SolverOptions options_;

  Flow flow_;
  std::vector<bool> live_;
  std::vector<int> out_degree_;
  std::vector<int> in_degree_;
  std::vector<bool> singular_;
  std::vector<bool> labeled_once_;
  std::vector<SubSink> subsinks_;
  std::vector<VertexId> delivered_via_;
  std::vector<SolverEvent> events_;
  int iteration_ = 0;
  int64_t invariant_checks_ = 0;

  // Bookkeeping for the debug checks.
  std::vector<ArcId> singular_moves_this_iteration_;
  std::vector<int> next_split_;
  // Union-find over vertices; only sources and sinks are ever joined.
  mutable std::vector<int> component_;
  int FindComponent(int v) const;
};

}  // namespace unsplit

#endif  // UNSPLIT_SOLVER_STATE_H_
