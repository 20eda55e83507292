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

#include "unsplit/graph.h"

#include <algorithm>

#include "unsplit/error.h"

namespace unsplit {

VertexId Instance::AddVertex(std::string name, Rational balance) {
  if (vertex_index_.contains(name)) {
    throw Error(ErrorCode::kInvalidInput, "duplicate vertex id '" + name + "'");
  }
  const VertexId v = num_vertices();
  vertex_index_.emplace(name, v);
  vertex_names_.push_back(std::move(name));
  balances_.push_back(std::move(balance));
  out_arcs_.emplace_back();
  in_arcs_.emplace_back();
  return v;
}

ArcId Instance::AddArc(std::string name, VertexId tail, VertexId head,
                       Rational capacity) {
  if (!HasVertex(tail) || !HasVertex(head)) {
    throw Error(ErrorCode::kInvalidInput,
                "arc '" + name + "' has an unknown endpoint");
  }
  if (arc_index_.contains(name)) {
    throw Error(ErrorCode::kInvalidInput, "duplicate arc id '" + name + "'");
  }
  const ArcId a = num_arcs();
  int parallel = 0;
  for (ArcId other : out_arcs_[tail]) {
    if (arcs_[other].head == head) ++parallel;
  }
  arc_index_.emplace(name, a);
  arc_names_.push_back(std::move(name));
  arcs_.push_back(Arc{tail, head, std::move(capacity), parallel});
  out_arcs_[tail].push_back(a);
  in_arcs_[head].push_back(a);
  return a;
}

std::optional<VertexId> Instance::FindVertex(std::string_view name) const {
  auto it = vertex_index_.find(std::string(name));
  if (it == vertex_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<ArcId> Instance::FindArc(std::string_view name) const {
  auto it = arc_index_.find(std::string(name));
  if (it == arc_index_.end()) return std::nullopt;
  return it->second;
}

std::vector<VertexId> Instance::Sources() const {
  std::vector<VertexId> result;
  for (VertexId v = 0; v < num_vertices(); ++v) {
    if (IsSource(v)) result.push_back(v);
  }
  return result;
}

std::vector<VertexId> Instance::Sinks() const {
  std::vector<VertexId> result;
  for (VertexId v = 0; v < num_vertices(); ++v) {
    if (IsSink(v)) result.push_back(v);
  }
  return result;
}

Rational Instance::Demand(VertexId v) const {
  return IsSink(v) ? Rational(-balances_[v]) : Rational(0);
}

Rational Instance::MaxDemand() const {
  Rational best = 0;
  for (const Rational& b : balances_) {
    if (-b > best) best = -b;
  }
  return best;
}

Rational Instance::MaxSupply() const {
  Rational best = 0;
  for (const Rational& b : balances_) {
    if (b > best) best = b;
  }
  return best;
}

Rational Instance::TotalDemand() const {
  Rational total = 0;
  for (const Rational& b : balances_) {
    if (b < 0) total -= b;
  }
  return total;
}

std::optional<Rational> Instance::MinCapacity() const {
  if (arcs_.empty()) return std::nullopt;
  Rational best = arcs_.front().capacity;
  for (const Arc& arc : arcs_) best = std::min(best, arc.capacity);
  return best;
}

}  // namespace unsplit
