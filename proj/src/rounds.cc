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

#include "unsplit/rounds.h"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "unsplit/error.h"
#include "unsplit/flow_ops.h"

namespace unsplit {
namespace {

std::string Fresh(const Instance& inst, std::string name, bool vertex) {
  while (vertex ? inst.FindVertex(name).has_value()
                : inst.FindArc(name).has_value()) {
    name += "'";
  }
  return name;
}

std::string Copy(const std::string& name, int alpha) {
  return name + "@" + std::to_string(alpha + 1);
}

void RequireFeasibleFlow(const Instance& instance, const Flow& flow) {
  if (auto problems = ValidateInstance(instance); !problems.empty()) {
    throw Error(ErrorCode::kInvalidInput, problems.front());
  }
  if (auto violations = TransshipmentViolations(instance, flow);
      !violations.empty()) {
    throw Error(ErrorCode::kNotTransshipment, violations.front());
  }
  if (!IsCapacityFeasible(instance, flow)) {
    throw Error(ErrorCode::kPrecondition, "flow exceeds a capacity");
  }
}

PlanRound MakeRound(const std::vector<const SinkShare*>& members) {
  PlanRound round;
  for (const SinkShare* share : members) {
    round.sinks.push_back(share->sink);
    round.solution.paths.insert(round.solution.paths.end(),
                                share->paths.begin(), share->paths.end());
  }
  std::sort(round.sinks.begin(), round.sinks.end());
  std::sort(round.solution.paths.begin(), round.solution.paths.end(),
            [](const PathFlow& a, const PathFlow& b) {
              return std::tie(a.sink, a.source) < std::tie(b.sink, b.source);
            });
  return round;
}

// One round per copy for the sinks that stay inside a single copy, then one
// round per group of critically split sinks, in key order.
template <typename Key, typename KeyFn>
RoundPlan Assemble(const CopiedRun& run, int64_t round_bound, KeyFn key_of) {
  RoundPlan plan;
  plan.copies = run.network.copies;
  plan.round_bound = round_bound;
  std::vector<std::vector<const SinkShare*>> by_copy(plan.copies);
  std::map<Key, std::vector<const SinkShare*>> groups;
  for (const SinkShare& share : run.shares) {
    if (share.critical) {
      ++plan.critical_sinks;
      groups[key_of(share)].push_back(&share);
    } else {
      by_copy[share.label].push_back(&share);
    }
  }
  for (const auto& members : by_copy) {
    if (!members.empty()) plan.rounds.push_back(MakeRound(members));
  }
  for (const auto& [key, members] : groups) {
    plan.rounds.push_back(MakeRound(members));
  }
  if (static_cast<int64_t>(plan.rounds.size()) > round_bound) {
    throw Error(ErrorCode::kInternal,
                "plan uses " + std::to_string(plan.rounds.size()) +
                    " rounds, more than " + std::to_string(round_bound));
  }
  return plan;
}

int64_t Binomial(int64_t n, int64_t k) {
  if (k < 0 || k > n) return 0;
  int64_t result = 1;
  for (int64_t i = 1; i <= k; ++i) result = result * (n - k + i) / i;
  return result;
}

}  // namespace

CopiedNetwork BuildCopiedNetwork(const Instance& instance, const Flow& flow,
                                 int copies) {
  if (copies < 1) throw Error(ErrorCode::kPrecondition, "need at least one copy");
  const int n = instance.num_vertices();
  const int m = instance.num_arcs();
  CopiedNetwork net;
  net.copies = copies;
  Instance& d = net.instance;
  std::vector<Rational> values;
  for (int alpha = 0; alpha < copies; ++alpha) {
    for (VertexId v = 0; v < n; ++v) d.AddVertex(Copy(instance.vertex_name(v), alpha));
  }
  net.super_sink.assign(n, kNoVertex);
  net.head_source.assign(n, kNoVertex);
  for (VertexId t : instance.Sinks()) {
    net.super_sink[t] = d.AddVertex(
        Fresh(d, "T[" + instance.vertex_name(t) + "]", true), instance.balance(t));
  }
  for (VertexId s : instance.Sources()) {
    net.head_source[s] = d.AddVertex(
        Fresh(d, "S[" + instance.vertex_name(s) + "]", true), instance.balance(s));
  }
  net.original_terminal.assign(d.num_vertices(), kNoVertex);
  for (VertexId v = 0; v < n; ++v) {
    if (net.super_sink[v] != kNoVertex) net.original_terminal[net.super_sink[v]] = v;
    if (net.head_source[v] != kNoVertex) net.original_terminal[net.head_source[v]] = v;
  }

  auto add = [&](const std::string& name, VertexId tail, VertexId head,
                 const Rational& capacity, const Rational& value, ArcId original,
                 int alpha) {
    d.AddArc(Fresh(d, name, false), tail, head, capacity);
    values.push_back(value);
    net.original_arc.push_back(original);
    net.arc_copy.push_back(alpha);
  };
  for (int alpha = 0; alpha < copies; ++alpha) {
    for (ArcId a = 0; a < m; ++a) {
      add(Copy(instance.arc_name(a), alpha), alpha * n + instance.tail(a),
          alpha * n + instance.head(a), instance.capacity(a) / copies,
          flow[a] / copies, a, alpha);
    }
  }
  for (VertexId t : instance.Sinks()) {
    const Rational share = instance.Demand(t) / copies;
    for (int alpha = 0; alpha < copies; ++alpha) {
      add(Copy(d.vertex_name(net.super_sink[t]), alpha), alpha * n + t,
          net.super_sink[t], share, share, kNoArc, alpha);
    }
  }
  for (VertexId s : instance.Sources()) {
    const Rational share = instance.balance(s) / copies;
    for (int alpha = 0; alpha < copies; ++alpha) {
      add(Copy(d.vertex_name(net.head_source[s]), alpha), net.head_source[s],
          alpha * n + s, share, share, kNoArc, alpha);
    }
  }
  net.flow = Flow(std::move(values));
  return net;
}

CopiedRun RunCopied(const Instance& instance, const Flow& flow, int copies) {
  CopiedRun run;
  run.network = BuildCopiedNetwork(instance, flow, copies);
  run.result = SolveModifiedDgg(run.network.instance, run.network.flow);
  const CopiedNetwork& net = run.network;

  std::map<VertexId, size_t> slot;
  for (VertexId t : instance.Sinks()) {
    slot[t] = run.shares.size();
    SinkShare share;
    share.sink = t;
    share.theta.assign(copies, Rational(0));
    run.shares.push_back(std::move(share));
  }
  for (const PathFlow& path : run.result.solution.paths) {
    if (path.arcs.size() < 3) {
      throw Error(ErrorCode::kInternal, "copied path without an inner arc");
    }
    const VertexId s = net.original_terminal[path.source];
    const VertexId t = net.original_terminal[path.sink];
    const int alpha = net.arc_copy[path.arcs[1]];
    PathFlow mapped{s, t, path.value, {}};
    for (size_t i = 1; i + 1 < path.arcs.size(); ++i) {
      const ArcId a = path.arcs[i];
      if (net.original_arc[a] == kNoArc || net.arc_copy[a] != alpha) {
        throw Error(ErrorCode::kInternal, "copied path leaves its copy");
      }
      mapped.arcs.push_back(net.original_arc[a]);
    }
    SinkShare& share = run.shares[slot.at(t)];
    share.paths.push_back(std::move(mapped));
    share.theta[alpha] += path.value;
  }

  for (SinkShare& share : run.shares) {
    const Rational demand = instance.Demand(share.sink);
    int used = 0;
    for (int alpha = 0; alpha < copies; ++alpha) {
      share.theta[alpha] /= demand;
      if (share.theta[alpha] > 0) {
        ++used;
        share.label = alpha;
      }
    }
    share.critical = used > 1;
    if (!share.critical) continue;
    const VertexId super_sink = net.super_sink[share.sink];
    bool labeled = false;
    for (const SolverEvent& e : run.result.events) {
      const auto* routed = std::get_if<event::RouteSingular>(&e);
      if (routed == nullptr ||
          run.result.subsinks[routed->split_subsink].sink != super_sink) {
        continue;
      }
      share.label = net.arc_copy[routed->entry_arc];
      labeled = true;
      break;
    }
    if (!labeled) {
      throw Error(ErrorCode::kInternal,
                  "sink " + instance.vertex_name(share.sink) +
                      " spans copies without a singular digraph");
    }
  }
  return run;
}

int ChooseN(const Rational& d_max, const Rational& c_min) {
  if (d_max == c_min) {
    throw Error(ErrorCode::kPrecondition,
                "d_max equals c_min: no round bound is known for this case");
  }
  if (d_max > c_min) {
    throw Error(ErrorCode::kPrecondition, "d_max exceeds c_min");
  }
  const Rational ratio = c_min / (c_min - d_max);
  const Rational n = Ceil(ratio);
  return std::max(2, static_cast<int>(n.get_num().get_si()));
}

int64_t CountGroupTuples(int n) {
  const int64_t m = static_cast<int64_t>(n * n - 1) * (n + 1);
  const int width = n + 1;
  int64_t count = 0;
  // Depth-first over coordinates; the last coordinate is implied by the
  // remaining budget.
  auto walk = [&](auto&& self, int index, int64_t sum) -> void {
    if (index == width) {
      if (sum >= m - width && sum <= m) ++count;
      return;
    }
    for (int64_t k = 0; sum + k <= m; ++k) self(self, index + 1, sum + k);
  };
  walk(walk, 0, 0);
  return count;
}

int64_t GroupTupleClosedForm(int n, int last_j) {
  const int64_t m = static_cast<int64_t>(n * n - 1) * (n + 1);
  int64_t total = 0;
  for (int j = 0; j <= last_j; ++j) total += Binomial(m - j + n, n);
  return total;
}

int64_t GridCell(const Rational& theta, int n) {
  const int64_t m = static_cast<int64_t>(n * n - 1) * (n + 1);
  if (theta >= 1) return m - 1;
  const Rational scaled = theta * m;
  return Floor(scaled).get_num().get_si();
}

RoundPlan RouteGeneralRounds(const Instance& instance, const Flow& flow,
                             std::optional<int> n) {
  RequireFeasibleFlow(instance, flow);
  const Rational d_max = instance.MaxDemand();
  const std::optional<Rational> c_min = instance.MinCapacity();
  int chosen = 2;
  if (c_min) {
    chosen = ChooseN(d_max, *c_min);
    if (n) {
      if (*n < 2 || d_max > (1 - Rational(1, *n)) * *c_min) {
        throw Error(ErrorCode::kPrecondition,
                    "d_max exceeds (1 - 1/n) c_min for n = " + std::to_string(*n));
      }
      chosen = *n;
    }
  } else if (n) {
    chosen = std::max(2, *n);
  }
  const CopiedRun run = RunCopied(instance, flow, chosen + 1);
  const int64_t bound = (chosen + 1) * (CountGroupTuples(chosen) + 1);
  using Key = std::pair<int, std::vector<int64_t>>;
  return Assemble<Key>(run, bound, [&](const SinkShare& share) {
    Key key{share.label, {}};
    int64_t sum = 0;
    for (const Rational& theta : share.theta) {
      key.second.push_back(GridCell(theta, chosen));
      sum += key.second.back();
    }
    const int64_t m = static_cast<int64_t>(chosen * chosen - 1) * (chosen + 1);
    if (sum < m - (chosen + 1) || sum > m) {
      throw Error(ErrorCode::kInternal, "share vector outside the admissible cells");
    }
    return key;
  });
}

RoundPlan RouteSixRounds(const Instance& instance, const Flow& flow) {
  RequireFeasibleFlow(instance, flow);
  if (auto c_min = instance.MinCapacity(); c_min && 3 * instance.MaxDemand() > *c_min) {
    throw Error(ErrorCode::kPrecondition, "six rounds need d_max <= c_min / 3");
  }
  const CopiedRun run = RunCopied(instance, flow, 2);
  using Key = std::pair<int, int>;
  return Assemble<Key>(run, 6, [](const SinkShare& share) {
    // Type 1: at least half of the demand went through the singular digraph.
    const bool type_one = 1 - share.theta[share.label] >= Rational(1, 2);
    return Key{share.label, type_one ? 1 : 2};
  });
}

RoundPlan RouteFourRounds(const Instance& instance, const Flow& flow) {
  RequireFeasibleFlow(instance, flow);
  if (auto c_min = instance.MinCapacity(); c_min && 4 * instance.MaxDemand() > *c_min) {
    throw Error(ErrorCode::kPrecondition, "four rounds need d_max <= c_min / 4");
  }
  const CopiedRun run = RunCopied(instance, flow, 2);
  return Assemble<int>(run, 4, [](const SinkShare& share) { return share.label; });
}

std::vector<std::string> VerifyRoundPlan(const Instance& instance,
                                         const std::vector<PlanRound>& rounds) {
  std::vector<std::string> problems;
  std::map<VertexId, int> owner;
  for (int r = 0; r < static_cast<int>(rounds.size()); ++r) {
    for (VertexId t : rounds[r].sinks) {
      if (!instance.HasVertex(t) || !instance.IsSink(t)) {
        problems.push_back("round " + std::to_string(r) + " lists a non-sink");
        continue;
      }
      auto [it, inserted] = owner.try_emplace(t, r);
      if (!inserted) {
        problems.push_back("not a partition: sink " + instance.vertex_name(t) +
                           " in rounds " + std::to_string(it->second) + " and " +
                           std::to_string(r));
      }
    }
  }
  for (VertexId t : instance.Sinks()) {
    if (!owner.count(t)) {
      problems.push_back("not a partition: sink " + instance.vertex_name(t) +
                         " is in no round");
    }
  }

  std::vector<Rational> spent(instance.num_vertices());
  for (int r = 0; r < static_cast<int>(rounds.size()); ++r) {
    const std::string where = "round " + std::to_string(r) + ": ";
    const PlanRound& round = rounds[r];
    const std::set<VertexId> members(round.sinks.begin(), round.sinks.end());
    std::map<VertexId, Rational> received;
    std::set<std::pair<VertexId, VertexId>> pairs;
    bool paths_ok = true;
    for (const PathFlow& path : round.solution.paths) {
      if (!instance.HasVertex(path.source) || !instance.HasVertex(path.sink) ||
          !instance.IsSource(path.source) || !members.count(path.sink) ||
          path.value <= 0) {
        problems.push_back(where + "path with an invalid endpoint or value");
        paths_ok = false;
        continue;
      }
      if (!pairs.insert({path.source, path.sink}).second) {
        problems.push_back(where + "two paths for " +
                           instance.vertex_name(path.source) + "-" +
                           instance.vertex_name(path.sink));
      }
      bool arcs_ok = std::all_of(path.arcs.begin(), path.arcs.end(), [&](ArcId a) {
        return a >= 0 && a < instance.num_arcs();
      });
      const std::vector<VertexId> vertices =
          arcs_ok ? PathVertices(instance, path.arcs) : std::vector<VertexId>{};
      if (vertices.empty() || vertices.front() != path.source ||
          vertices.back() != path.sink ||
          std::set<VertexId>(vertices.begin(), vertices.end()).size() !=
              vertices.size()) {
        problems.push_back(where + "not a simple source-sink path");
        paths_ok = false;
        continue;
      }
      received[path.sink] += path.value;
      spent[path.source] += path.value;
    }
    for (VertexId t : round.sinks) {
      if (!instance.HasVertex(t) || !instance.IsSink(t)) continue;
      if (received[t] != instance.Demand(t)) {
        problems.push_back(where + "sink " + instance.vertex_name(t) +
                           " receives " + FormatRational(received[t]) + " of " +
                           FormatRational(instance.Demand(t)));
      }
    }
    if (!paths_ok) continue;
    const Flow load = Superpose(instance, round.solution);
    for (ArcId a = 0; a < instance.num_arcs(); ++a) {
      if (load[a] > instance.capacity(a)) {
        problems.push_back(where + "capacity exceeded on arc " +
                           instance.arc_name(a));
      }
    }
    for (VertexId s : instance.Sources()) {
      if (spent[s] > instance.balance(s)) {
        problems.push_back(where + "supply exceeded at " + instance.vertex_name(s));
        spent[s] = instance.balance(s);  // report each source once
      }
    }
  }
  for (VertexId s : instance.Sources()) {
    if (spent[s] < instance.balance(s)) {
      problems.push_back("supply of " + instance.vertex_name(s) +
                         " not exhausted: " + FormatRational(spent[s]) + " of " +
                         FormatRational(instance.balance(s)));
    }
  }
  return problems;
}

std::pair<int, Rational> BestRound(const Instance& instance,
                                   const std::vector<PlanRound>& rounds) {
  if (rounds.empty()) throw Error(ErrorCode::kPrecondition, "empty plan");
  int best = 0;
  Rational best_demand = -1;
  for (int r = 0; r < static_cast<int>(rounds.size()); ++r) {
    Rational demand = 0;
    for (VertexId t : rounds[r].sinks) demand += instance.Demand(t);
    if (demand > best_demand) {
      best = r;
      best_demand = demand;
    }
  }
  return {best, best_demand};
}

}  // namespace unsplit
