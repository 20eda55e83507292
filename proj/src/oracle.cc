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

#include "unsplit/oracle.h"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <tuple>

#include "unsplit/error.h"
#include "unsplit/flow_ops.h"
#include "unsplit/lp.h"

namespace unsplit {
namespace {

struct Column {
  VertexId source;
  VertexId sink;
  std::vector<ArcId> arcs;
};

// A group must commit to exactly one of its options; an option is a set of
// columns (paths) whose values the LP then chooses.
struct Group {
  std::vector<std::vector<int>> options;
  std::vector<int> all_columns;
};

enum class Goal { kFeasible, kMinViolation };

class StructureSearch {
 public:
  StructureSearch(const Instance& instance, std::vector<Column> columns,
                  std::vector<Group> groups, Goal goal, bool integral_only,
                  const Flow* reference, const OracleLimits& limits)
      : instance_(instance),
        columns_(std::move(columns)),
        groups_(std::move(groups)),
        goal_(goal),
        integral_only_(integral_only),
        reference_(reference),
        limits_(limits),
        choice_(groups_.size(), -1) {}

  void Run() { Visit(0); }

  bool found() const { return best_values_.has_value(); }
  const Rational& best_objective() const { return best_objective_; }
  int64_t nodes() const { return nodes_; }

  UnsplittableSolution Witness() const {
    UnsplittableSolution solution;
    if (!best_values_) return solution;
    for (size_t i = 0; i < best_columns_.size(); ++i) {
      if ((*best_values_)[i] == 0) continue;
      const Column& c = columns_[best_columns_[i]];
      solution.paths.push_back(
          PathFlow{c.source, c.sink, (*best_values_)[i], c.arcs});
    }
    std::sort(solution.paths.begin(), solution.paths.end(),
              [](const PathFlow& a, const PathFlow& b) {
                return std::tie(a.sink, a.source) < std::tie(b.sink, b.source);
              });
    return solution;
  }

 private:
  std::vector<int> ActiveColumns(size_t depth) const {
    std::vector<int> active;
    for (size_t g = 0; g < groups_.size(); ++g) {
      const std::vector<int>& cols =
          g < depth ? groups_[g].options[choice_[g]] : groups_[g].all_columns;
      active.insert(active.end(), cols.begin(), cols.end());
    }
    return active;
  }

  LinearProgram BuildLp(const std::vector<int>& active) const {
    LinearProgram lp;
    const int k = static_cast<int>(active.size());
    lp.num_variables = goal_ == Goal::kMinViolation ? k + 2 : k;
    std::map<VertexId, LinearConstraint> terminal_rows;
    for (VertexId v = 0; v < instance_.num_vertices(); ++v) {
      if (instance_.balance(v) == 0) continue;
      terminal_rows[v] =
          LinearConstraint{{}, Relation::kEqual,
                           instance_.IsSource(v) ? instance_.balance(v)
                                                 : instance_.Demand(v)};
    }
    std::vector<LinearConstraint> arc_rows(instance_.num_arcs());
    for (int i = 0; i < k; ++i) {
      const Column& c = columns_[active[i]];
      terminal_rows[c.source].terms.push_back({i, Rational(1)});
      terminal_rows[c.sink].terms.push_back({i, Rational(1)});
      for (ArcId a : c.arcs) arc_rows[a].terms.push_back({i, Rational(1)});
    }
    for (auto& [v, row] : terminal_rows) lp.constraints.push_back(row);
    for (ArcId a = 0; a < instance_.num_arcs(); ++a) {
      LinearConstraint& row = arc_rows[a];
      row.relation = Relation::kLessEqual;
      if (goal_ == Goal::kFeasible) {
        if (row.terms.empty()) continue;
        row.rhs = instance_.capacity(a);
      } else {
        row.terms.push_back({k, Rational(-1)});
        row.terms.push_back({k + 1, Rational(1)});
        row.rhs = (*reference_)[a];
      }
      lp.constraints.push_back(std::move(row));
    }
    if (goal_ == Goal::kMinViolation) {
      lp.objective.assign(k + 2, Rational(0));
      lp.objective[k] = 1;
      lp.objective[k + 1] = -1;
    }
    return lp;
  }

  // If the relaxation already commits every open group to one option,
  // returns those options.
  std::optional<std::vector<int>> Committed(size_t depth,
                                            const std::vector<int>& active,
                                            const LpResult& lp) const {
    std::set<int> positive;
    for (size_t i = 0; i < active.size(); ++i) {
      if (lp.values[i] > 0) positive.insert(active[i]);
      if (integral_only_ && !IsIntegral(lp.values[i])) return std::nullopt;
    }
    std::vector<int> picks(choice_.begin(), choice_.end());
    for (size_t g = depth; g < groups_.size(); ++g) {
      std::vector<int> used;
      for (int c : groups_[g].all_columns) {
        if (positive.count(c)) used.push_back(c);
      }
      int pick = -1;
      for (size_t o = 0; o < groups_[g].options.size() && pick < 0; ++o) {
        const std::vector<int>& option = groups_[g].options[o];
        if (std::all_of(used.begin(), used.end(), [&](int c) {
              return std::find(option.begin(), option.end(), c) !=
                     option.end();
            })) {
          pick = static_cast<int>(o);
        }
      }
      if (pick < 0) return std::nullopt;
      picks[g] = pick;
    }
    return picks;
  }

  void Record(const std::vector<int>& active, const LpResult& lp) {
    best_columns_ = active;
    best_values_ = std::vector<Rational>(lp.values.begin(),
                                         lp.values.begin() + active.size());
    best_objective_ = lp.objective;
  }

  bool Done() const { return goal_ == Goal::kFeasible && found(); }

  void Visit(size_t depth) {
    if (Done()) return;
    if (++nodes_ > limits_.max_nodes) {
      throw Error(ErrorCode::kScaleGuard, "oracle search exceeds " +
                                              std::to_string(limits_.max_nodes) +
                                              " nodes");
    }
    const std::vector<int> active = ActiveColumns(depth);
    const LinearProgram lp = BuildLp(active);
    LpResult relaxed = SolveLp(lp);
    if (relaxed.status != LpStatus::kOptimal) return;
    if (found() && goal_ == Goal::kMinViolation &&
        relaxed.objective >= best_objective_) {
      return;
    }
    if (Committed(depth, active, relaxed)) {
      Record(active, relaxed);
      return;
    }
    if (depth == groups_.size()) {
      // Only integrality can be missing here.
      std::vector<bool> integral(lp.num_variables, false);
      for (size_t i = 0; i < active.size(); ++i) integral[i] = true;
      LpResult exact = SolveIntegerLp(lp, integral);
      if (exact.status == LpStatus::kOptimal &&
          (!found() || exact.objective < best_objective_)) {
        Record(active, exact);
      }
      return;
    }
    for (size_t o = 0; o < groups_[depth].options.size(); ++o) {
      choice_[depth] = static_cast<int>(o);
      Visit(depth + 1);
      if (Done()) return;
    }
    choice_[depth] = -1;
  }

  const Instance& instance_;
  std::vector<Column> columns_;
  std::vector<Group> groups_;
  Goal goal_;
  bool integral_only_;
  const Flow* reference_;
  OracleLimits limits_;
  std::vector<int> choice_;
  int64_t nodes_ = 0;
  std::vector<int> best_columns_;
  std::optional<std::vector<Rational>> best_values_;
  Rational best_objective_;
};

void Finish(Group& group) {
  std::set<int> all;
  for (const auto& option : group.options) all.insert(option.begin(), option.end());
  group.all_columns.assign(all.begin(), all.end());
}

void RequireValid(const Instance& instance) {
  if (auto problems = ValidateInstance(instance); !problems.empty()) {
    throw Error(ErrorCode::kInvalidInput, problems.front());
  }
}

// One group per reachable (source, sink) pair; options are single paths.
void PairGroups(const Instance& instance, const OracleLimits& limits,
                std::vector<Column>& columns, std::vector<Group>& groups) {
  int64_t total = 0;
  for (VertexId s : instance.Sources()) {
    for (VertexId t : instance.Sinks()) {
      auto paths = EnumerateSimplePaths(instance, s, t, limits.max_paths - total);
      total += static_cast<int64_t>(paths.size());
      if (paths.empty()) continue;
      Group group;
      for (auto& arcs : paths) {
        group.options.push_back({static_cast<int>(columns.size())});
        columns.push_back(Column{s, t, std::move(arcs)});
      }
      Finish(group);
      groups.push_back(std::move(group));
    }
  }
  std::stable_sort(groups.begin(), groups.end(),
                   [](const Group& a, const Group& b) {
                     return a.options.size() < b.options.size();
                   });
}

std::vector<bool> CanReach(const Instance& instance, VertexId target) {
  std::vector<bool> reach(instance.num_vertices(), false);
  std::vector<VertexId> stack = {target};
  reach[target] = true;
  while (!stack.empty()) {
    const VertexId v = stack.back();
    stack.pop_back();
    for (ArcId a : instance.in_arcs(v)) {
      const VertexId u = instance.tail(a);
      if (!reach[u]) {
        reach[u] = true;
        stack.push_back(u);
      }
    }
  }
  return reach;
}

// One group per sink; options are in-trees toward the sink, reduced to the
// paths they give the sources.
void TreeGroups(const Instance& instance, const OracleLimits& limits,
                std::vector<Column>& columns, std::vector<Group>& groups) {
  std::map<std::tuple<VertexId, VertexId, std::vector<ArcId>>, int> column_ids;
  int64_t total = 0;
  for (VertexId t : instance.Sinks()) {
    const std::vector<bool> reach = CanReach(instance, t);
    std::vector<VertexId> free_vertices;
    std::vector<std::vector<ArcId>> moves;
    for (VertexId v = 0; v < instance.num_vertices(); ++v) {
      if (v == t || !reach[v]) continue;
      std::vector<ArcId> out;
      for (ArcId a : instance.out_arcs(v)) {
        if (reach[instance.head(a)]) out.push_back(a);
      }
      free_vertices.push_back(v);
      moves.push_back(std::move(out));
    }
    std::set<std::vector<int>> seen;
    Group group;
    std::vector<ArcId> next(instance.num_vertices(), kNoArc);
    std::vector<size_t> index(free_vertices.size(), 0);
    while (true) {
      if (++total > limits.max_paths) {
        throw Error(ErrorCode::kScaleGuard, "too many in-trees to enumerate");
      }
      for (size_t i = 0; i < free_vertices.size(); ++i) {
        next[free_vertices[i]] = moves[i][index[i]];
      }
      std::vector<int> option;
      bool acyclic = true;
      for (VertexId s : instance.Sources()) {
        if (!reach[s] || !acyclic) continue;
        std::vector<ArcId> arcs;
        std::set<VertexId> visited = {s};
        for (VertexId v = s; v != t;) {
          arcs.push_back(next[v]);
          v = instance.head(next[v]);
          if (!visited.insert(v).second) {
            acyclic = false;
            break;
          }
        }
        if (!acyclic) break;
        auto key = std::make_tuple(s, t, arcs);
        auto [it, inserted] =
            column_ids.try_emplace(key, static_cast<int>(columns.size()));
        if (inserted) columns.push_back(Column{s, t, std::move(arcs)});
        option.push_back(it->second);
      }
      std::sort(option.begin(), option.end());
      if (acyclic && seen.insert(option).second) {
        group.options.push_back(std::move(option));
      }
      size_t i = 0;
      while (i < index.size() && ++index[i] == moves[i].size()) {
        index[i++] = 0;
      }
      if (i == index.size()) break;
    }
    if (group.options.empty()) continue;
    Finish(group);
    groups.push_back(std::move(group));
  }
}

}  // namespace

std::vector<std::vector<ArcId>> EnumerateSimplePaths(const Instance& instance,
                                                     VertexId source,
                                                     VertexId sink,
                                                     int64_t limit) {
  std::vector<std::vector<ArcId>> paths;
  std::vector<ArcId> current;
  std::vector<bool> on_path(instance.num_vertices(), false);
  const std::vector<bool> reach = CanReach(instance, sink);
  auto extend = [&](auto&& self, VertexId v) -> void {
    if (v == sink) {
      if (static_cast<int64_t>(paths.size()) >= limit) {
        throw Error(ErrorCode::kScaleGuard, "too many simple paths");
      }
      paths.push_back(current);
      return;
    }
    on_path[v] = true;
    for (ArcId a : instance.out_arcs(v)) {
      const VertexId w = instance.head(a);
      if (on_path[w] || !reach[w]) continue;
      current.push_back(a);
      self(self, w);
      current.pop_back();
    }
    on_path[v] = false;
  };
  if (reach[source]) extend(extend, source);
  return paths;
}

FeasibilityResult BruteForceFeasible(const Instance& instance,
                                     bool integral_only,
                                     const OracleLimits& limits) {
  RequireValid(instance);
  std::vector<Column> columns;
  std::vector<Group> groups;
  PairGroups(instance, limits, columns, groups);
  StructureSearch search(instance, std::move(columns), std::move(groups),
                         Goal::kFeasible, integral_only, nullptr, limits);
  search.Run();
  return FeasibilityResult{search.found(), search.Witness(), search.nodes()};
}

ViolationResult MinViolation(const Instance& instance, const Flow& reference,
                             const OracleLimits& limits) {
  RequireValid(instance);
  if (reference.size() != instance.num_arcs()) {
    throw Error(ErrorCode::kInvalidInput, "reference flow has the wrong size");
  }
  if (instance.num_arcs() == 0) {
    throw Error(ErrorCode::kPrecondition, "instance has no arcs");
  }
  std::vector<Column> columns;
  std::vector<Group> groups;
  PairGroups(instance, limits, columns, groups);
  StructureSearch search(instance, std::move(columns), std::move(groups),
                         Goal::kMinViolation, false, &reference, limits);
  search.Run();
  if (!search.found()) {
    throw Error(ErrorCode::kInfeasible, "no unsplittable b-transshipment");
  }
  return ViolationResult{search.best_objective(), search.Witness(),
                         search.nodes()};
}

ViolationResult MinConfluentViolation(const Instance& instance,
                                      const Flow& reference,
                                      const OracleLimits& limits) {
  RequireValid(instance);
  if (reference.size() != instance.num_arcs()) {
    throw Error(ErrorCode::kInvalidInput, "reference flow has the wrong size");
  }
  if (instance.num_arcs() == 0) {
    throw Error(ErrorCode::kPrecondition, "instance has no arcs");
  }
  std::vector<Column> columns;
  std::vector<Group> groups;
  TreeGroups(instance, limits, columns, groups);
  StructureSearch search(instance, std::move(columns), std::move(groups),
                         Goal::kMinViolation, false, &reference, limits);
  search.Run();
  if (!search.found()) {
    throw Error(ErrorCode::kInfeasible, "no confluent b-transshipment");
  }
  return ViolationResult{search.best_objective(), search.Witness(),
                         search.nodes()};
}

}  // namespace unsplit
