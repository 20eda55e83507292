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

#ifndef UNSPLIT_GRAPH_H_
#define UNSPLIT_GRAPH_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "unsplit/rational.h"

namespace unsplit {

using VertexId = int32_t;
using ArcId = int32_t;

inline constexpr VertexId kNoVertex = -1;
inline constexpr ArcId kNoArc = -1;

struct Arc {
  VertexId tail = kNoVertex;
  VertexId head = kNoVertex;
  Rational capacity;
  // Number of earlier arcs with the same (tail, head).
  int parallel_index = 0;
};

// Directed multigraph with capacities and a vertex balance function.
// Vertices and arcs carry external names (the ids used in files) and dense
// internal ids assigned in insertion order. Arc ids are stable; algorithms
// never identify arcs by their endpoints.
//
// Sources are vertices with positive balance, sinks those with negative
// balance. Self-loops and a non-zero balance sum are representable so that
// ValidateInstance() can report them.
class Instance {
 public:
  VertexId AddVertex(std::string name, Rational balance = 0);
  ArcId AddArc(std::string name, VertexId tail, VertexId head,
               Rational capacity);

  int num_vertices() const { return static_cast<int>(vertex_names_.size()); }
  int num_arcs() const { return static_cast<int>(arcs_.size()); }

  const Arc& arc(ArcId a) const { return arcs_[a]; }
  VertexId tail(ArcId a) const { return arcs_[a].tail; }
  VertexId head(ArcId a) const { return arcs_[a].head; }
  const Rational& capacity(ArcId a) const { return arcs_[a].capacity; }
  const Rational& balance(VertexId v) const { return balances_[v]; }
  void set_balance(VertexId v, Rational balance) { balances_[v] = balance; }

  const std::string& vertex_name(VertexId v) const { return vertex_names_[v]; }
  const std::string& arc_name(ArcId a) const { return arc_names_[a]; }

  std::span<const ArcId> out_arcs(VertexId v) const { return out_arcs_[v]; }
  std::span<const ArcId> in_arcs(VertexId v) const { return in_arcs_[v]; }

  bool HasVertex(VertexId v) const { return v >= 0 && v < num_vertices(); }
  std::optional<VertexId> FindVertex(std::string_view name) const;
  std::optional<ArcId> FindArc(std::string_view name) const;

  bool IsSource(VertexId v) const { return balances_[v] > 0; }
  bool IsSink(VertexId v) const { return balances_[v] < 0; }
  std::vector<VertexId> Sources() const;
  std::vector<VertexId> Sinks() const;

  // |b(t)| for sinks, 0 otherwise.
  Rational Demand(VertexId v) const;
  // Largest sink demand, 0 if there is no sink.
  Rational MaxDemand() const;
  Rational MaxSupply() const;
  Rational TotalDemand() const;
  // nullopt for an arc-less instance.
  std::optional<Rational> MinCapacity() const;

 private:
  std::vector<std::string> vertex_names_;
  std::vector<Rational> balances_;
  std::vector<std::vector<ArcId>> out_arcs_;
  std::vector<std::vector<ArcId>> in_arcs_;
  std::vector<std::string> arc_names_;
  std::vector<Arc> arcs_;
  std::unordered_map<std::string, VertexId> vertex_index_;
  std::unordered_map<std::string, ArcId> arc_index_;
};

// Per-arc flow values, indexed by ArcId.
class Flow {
 public:
  Flow() = default;
  explicit Flow(int num_arcs) : values_(num_arcs) {}
  explicit Flow(std::vector<Rational> values) : values_(std::move(values)) {}

  int size() const { return static_cast<int>(values_.size()); }
  Rational& operator[](ArcId a) { return values_[a]; }
  const Rational& operator[](ArcId a) const { return values_[a]; }
  const std::vector<Rational>& values() const { return values_; }

  bool operator==(const Flow& other) const = default;

 private:
  std::vector<Rational> values_;
};

// A source-to-sink path carrying `value` units.
struct PathFlow {
  VertexId source = kNoVertex;
  VertexId sink = kNoVertex;
  Rational value;
  std::vector<ArcId> arcs;

  bool operator==(const PathFlow& other) const = default;
};

struct UnsplittableSolution {
  std::vector<PathFlow> paths;

  bool operator==(const UnsplittableSolution& other) const = default;
};

}  // namespace unsplit

#endif  // UNSPLIT_GRAPH_H_
