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

#include "unsplit/verify.h"

#include <map>
#include <numeric>
#include <set>
#include <utility>

#include "unsplit/flow_ops.h"

namespace unsplit {
namespace {

CheckOutcome Named(std::string name) {
  CheckOutcome outcome;
  outcome.name = std::move(name);
  return outcome;
}

CheckReport Single(CheckOutcome outcome) {
  CheckReport report;
  report.checks.push_back(std::move(outcome));
  return report;
}

std::string PairName(const Instance& instance, VertexId s, VertexId t) {
  return instance.vertex_name(s) + "-" + instance.vertex_name(t);
}

class DisjointSets {
 public:
  explicit DisjointSets(int n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int Find(int v) {
    while (parent_[v] != v) v = parent_[v] = parent_[parent_[v]];
    return v;
  }
  bool Union(int a, int b) {
    a = Find(a);
    b = Find(b);
    if (a == b) return false;
    parent_[a] = b;
    return true;
  }

 private:
  std::vector<int> parent_;
};

}  // namespace

bool CheckReport::passed() const {
  for (const CheckOutcome& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

const CheckOutcome* CheckReport::Find(const std::string& name) const {
  for (const CheckOutcome& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

void CheckReport::Append(const CheckReport& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
}

CheckReport CheckUnsplittable(const Instance& instance,
                              const UnsplittableSolution& solution) {
  CheckOutcome out = Named("unsplittable");
  auto fail = [&](std::string witness, std::string detail) {
    if (!out.passed) return;
    out.passed = false;
    out.witness = std::move(witness);
    out.detail = std::move(detail);
  };
  std::set<std::pair<VertexId, VertexId>> pairs;
  for (const PathFlow& path : solution.paths) {
    if (!instance.HasVertex(path.source) || !instance.HasVertex(path.sink)) {
      fail("path", "unknown endpoint");
      continue;
    }
    const std::string pair = PairName(instance, path.source, path.sink);
    if (!instance.IsSource(path.source) || !instance.IsSink(path.sink)) {
      fail("pair " + pair, "path does not join a source to a sink");
    }
    if (path.value <= 0) fail("pair " + pair, "non-positive path value");
    if (!pairs.insert({path.source, path.sink}).second) {
      fail("pair " + pair, "two paths for one source-sink pair");
    }
    for (ArcId a : path.arcs) {
      if (a < 0 || a >= instance.num_arcs()) {
        fail("pair " + pair, "unknown arc");
      }
    }
    if (!out.passed) continue;
    const std::vector<VertexId> vertices = PathVertices(instance, path.arcs);
    if (vertices.empty() || vertices.front() != path.source ||
        vertices.back() != path.sink) {
      fail("pair " + pair, "arcs do not form a path from source to sink");
      continue;
    }
    std::set<VertexId> seen(vertices.begin(), vertices.end());
    if (seen.size() != vertices.size()) {
      fail("pair " + pair, "path repeats a vertex");
    }
  }
  if (out.passed) {
    const Flow total = Superpose(instance, solution);
    for (VertexId v = 0; v < instance.num_vertices(); ++v) {
      const Rational excess = Excess(instance, total, v);
      if (excess != instance.balance(v)) {
        fail("vertex " + instance.vertex_name(v),
             "excess " + FormatRational(excess) + " differs from balance " +
                 FormatRational(instance.balance(v)));
        break;
      }
    }
  }
  CheckReport report = Single(std::move(out));
  report.stats = ComputeStats(instance, solution, nullptr);
  return report;
}

CheckReport CheckDggBound(const Instance& instance, const Flow& reference,
                          const UnsplittableSolution& solution,
                          BoundDirection direction,
                          std::optional<Rational> bound) {
  const Rational limit = bound ? *bound : instance.MaxDemand();
  const bool upper = direction == BoundDirection::kUpper;
  CheckOutcome out = Named(upper ? "dgg_upper_bound" : "dgg_lower_bound");
  const Flow flow = Superpose(instance, solution);
  std::optional<Rational> tightest;
  ArcId tight_arc = kNoArc;
  for (ArcId a = 0; a < instance.num_arcs(); ++a) {
    // Positive slack means the strict inequality holds on `a`.
    const Rational slack = upper ? Rational(reference[a] + limit - flow[a])
                                 : Rational(flow[a] - reference[a] + limit);
    if (!tightest || slack < *tightest) {
      tightest = slack;
      tight_arc = a;
    }
    if (slack <= 0 && out.passed) {
      out.passed = false;
      out.witness = "arc " + instance.arc_name(a);
      out.detail = "flow " + FormatRational(flow[a]) +
                   (upper ? " >= " : " <= ") +
                   FormatRational(upper ? Rational(reference[a] + limit)
                                        : Rational(reference[a] - limit));
    }
  }
  if (out.passed && tight_arc != kNoArc) {
    out.detail = "tightest arc " + instance.arc_name(tight_arc) + " slack " +
                 FormatRational(*tightest);
  }
  CheckReport report = Single(std::move(out));
  report.stats = ComputeStats(instance, solution, &reference);
  return report;
}

CheckReport CheckConfluence(const Instance& instance,
                            const UnsplittableSolution& solution) {
  CheckOutcome out = Named("confluence");
  std::map<VertexId, std::set<ArcId>> arcs_by_sink;
  for (const PathFlow& path : solution.paths) {
    arcs_by_sink[path.sink].insert(path.arcs.begin(), path.arcs.end());
  }
  for (const auto& [sink, arcs] : arcs_by_sink) {
    std::map<VertexId, int> out_count;
    for (ArcId a : arcs) {
      ++out_count[instance.tail(a)];
      out_count.try_emplace(instance.head(a), 0);
    }
    for (const auto& [v, count] : out_count) {
      if (v == sink ? count == 0 : count == 1) continue;
      out.passed = false;
      out.witness = "sink " + instance.vertex_name(sink) + " vertex " +
                    instance.vertex_name(v);
      out.detail = std::to_string(count) + " outgoing arcs toward the sink";
      return Single(std::move(out));
    }
  }
  return Single(std::move(out));
}

CheckReport CheckBipartiteTree(const Instance& instance,
                               const UnsplittableSolution& solution) {
  CheckOutcome out = Named("bipartite_tree");
  DisjointSets sets(instance.num_vertices());
  std::set<std::pair<VertexId, VertexId>> edges;
  for (const PathFlow& path : solution.paths) {
    if (path.value <= 0) continue;
    if (!edges.insert({path.source, path.sink}).second) continue;
    if (!sets.Union(path.source, path.sink) && out.passed) {
      out.passed = false;
      out.witness = "cycle through " +
                    PairName(instance, path.source, path.sink);
    }
  }
  const size_t terminals =
      instance.Sources().size() + instance.Sinks().size();
  if (out.passed && terminals > 0 && solution.paths.size() > terminals - 1) {
    out.passed = false;
    out.witness = "paths " + std::to_string(solution.paths.size());
    out.detail = "more than " + std::to_string(terminals - 1) + " paths";
  }
  return Single(std::move(out));
}

CheckReport CheckCapacity(const Instance& instance,
                          const UnsplittableSolution& solution) {
  CheckOutcome out = Named("capacity");
  const Flow flow = Superpose(instance, solution);
  for (ArcId a = 0; a < instance.num_arcs(); ++a) {
    if (flow[a] > instance.capacity(a)) {
      out.passed = false;
      out.witness = "arc " + instance.arc_name(a);
      out.detail = "flow " + FormatRational(flow[a]) + " > capacity " +
                   FormatRational(instance.capacity(a));
      break;
    }
  }
  return Single(std::move(out));
}

ReportStats ComputeStats(const Instance& instance,
                         const UnsplittableSolution& solution,
                         const Flow* reference) {
  ReportStats stats;
  stats.path_count = static_cast<int>(solution.paths.size());
  const Flow flow = Superpose(instance, solution);
  for (ArcId a = 0; a < instance.num_arcs(); ++a) {
    if (reference != nullptr) {
      const Rational increase = flow[a] - (*reference)[a];
      if (!stats.max_increase || increase > *stats.max_increase) {
        stats.max_increase = increase;
      }
    }
    if (instance.capacity(a) > 0) {
      const Rational ratio = flow[a] / instance.capacity(a);
      if (!stats.congestion || ratio > *stats.congestion) {
        stats.congestion = ratio;
      }
    }
  }
  return stats;
}

void WriteReport(std::ostream& out, const CheckReport& report,
                 ReportFormat format) {
  if (format == ReportFormat::kText) {
    for (const CheckOutcome& c : report.checks) {
      out << c.name << ": " << (c.passed ? "pass" : "FAIL");
      if (!c.witness.empty()) out << " [" << c.witness << "]";
      if (!c.detail.empty()) out << " " << c.detail;
      out << "\n";
    }
    out << "paths: " << report.stats.path_count << "\n";
    if (report.stats.max_increase) {
      out << "max increase: " << FormatRational(*report.stats.max_increase)
          << "\n";
    }
    if (report.stats.congestion) {
      out << "congestion: " << FormatRational(*report.stats.congestion)
          << "\n";
    }
    out << "result: " << (report.passed() ? "pass" : "FAIL") << "\n";
    return;
  }
  for (const CheckOutcome& c : report.checks) {
    out << c.name << "=" << (c.passed ? "pass" : "fail") << "\n";
    if (!c.witness.empty()) out << c.name << ".witness=" << c.witness << "\n";
  }
  out << "paths=" << report.stats.path_count << "\n";
  if (report.stats.max_increase) {
    out << "max_increase=" << FormatRational(*report.stats.max_increase)
        << "\n";
  }
  if (report.stats.congestion) {
    out << "congestion=" << FormatRational(*report.stats.congestion) << "\n";
  }
  out << "result=" << (report.passed() ? "pass" : "fail") << "\n";
}

}  // namespace unsplit
