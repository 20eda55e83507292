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

#include "unsplit/instances.h"

#include <algorithm>
#include <random>
#include <set>
#include <string>

#include "unsplit/error.h"
#include "unsplit/flow_ops.h"

namespace unsplit {
namespace {

std::string Indexed(const std::string& prefix, int i) {
  return prefix + std::to_string(i);
}

std::string Indexed(const std::string& prefix, int i, int j) {
  return prefix + std::to_string(i) + "_" + std::to_string(j);
}

// Inclusive range; written out so that output does not depend on the
// standard library's distribution implementation.
int64_t Uniform(std::mt19937_64& rng, int64_t lo, int64_t hi) {
  const uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
  return lo + static_cast<int64_t>(rng() % span);
}

}  // namespace

GeneratedInstance GenerateTightness(int q, int k) {
  if (k < 1 || q < 3 || q <= k + 1) {
    throw Error(ErrorCode::kPrecondition,
                "tightness family needs k >= 1, q >= 3 and q > k + 1");
  }
  Instance inst;
  std::vector<VertexId> dedicated, shared, hubs, sinks;
  for (int j = 1; j <= q; ++j) {
    dedicated.push_back(inst.AddVertex(Indexed("s", j), Rational(q - k, q)));
  }
  for (int i = 1; i <= k; ++i) {
    shared.push_back(inst.AddVertex(Indexed("s", q + i), 1));
  }
  for (int i = 1; i <= k; ++i) hubs.push_back(inst.AddVertex(Indexed("h", i)));
  for (int j = 1; j <= q; ++j) sinks.push_back(inst.AddVertex(Indexed("t", j), -1));

  std::vector<Rational> flow;
  const Rational share(1, q);
  for (int j = 0; j < q; ++j) {
    for (int p = 1; p <= q - k; ++p) {
      inst.AddArc(Indexed("d", j + 1, p), dedicated[j], sinks[j], 1);
      flow.push_back(share);
    }
  }
  for (int i = 0; i < k; ++i) {
    inst.AddArc(Indexed("a", i + 1), shared[i], hubs[i], 1);
    flow.push_back(1);
    for (int j = 0; j < q; ++j) {
      inst.AddArc(Indexed("f", i + 1, j + 1), hubs[i], sinks[j], 1);
      flow.push_back(share);
    }
  }
  return GeneratedInstance{std::move(inst), Flow(std::move(flow))};
}

Instance GenerateCostOfConfluence(int q) {
  if (q < 2) throw Error(ErrorCode::kPrecondition, "confluence family needs q >= 2");
  Instance inst;
  std::vector<VertexId> sources, relays, sinks;
  for (int j = 1; j <= q; ++j) sources.push_back(inst.AddVertex(Indexed("s", j), 1));
  const VertexId hub = inst.AddVertex("m");
  for (int i = 1; i <= q; ++i) relays.push_back(inst.AddVertex(Indexed("r", i)));
  for (int i = 1; i <= q; ++i) {
    sinks.push_back(inst.AddVertex(Indexed("t", i), Rational(1 - q, q)));
  }
  const VertexId last = inst.AddVertex(Indexed("t", q + 1), -1);
  for (int j = 0; j < q; ++j) inst.AddArc(Indexed("e", j + 1), sources[j], hub, 1);
  for (int i = 0; i < q; ++i) inst.AddArc(Indexed("a", i + 1), hub, relays[i], 1);
  for (int i = 0; i < q; ++i) {
    inst.AddArc(Indexed("b", i + 1), relays[i], sinks[i], 1);
    inst.AddArc(Indexed("c", i + 1), relays[i], last, 1);
  }
  return inst;
}

NonintegralInstance GenerateNonintegral() {
  Instance inst;
  const VertexId s1 = inst.AddVertex("s1", 5);
  const VertexId s2 = inst.AddVertex("s2", 15);
  const VertexId t1 = inst.AddVertex("t1", -8);
  const VertexId t2 = inst.AddVertex("t2", -12);
  const VertexId v = inst.AddVertex("v");
  const VertexId x = inst.AddVertex("x");
  const VertexId w = inst.AddVertex("w");
  const VertexId y = inst.AddVertex("y");
  const ArcId s1v = inst.AddArc("s1v", s1, v, 2);
  const ArcId s2v = inst.AddArc("s2v", s2, v, 9);
  const ArcId s1x = inst.AddArc("s1x", s1, x, 4);
  const ArcId s2x = inst.AddArc("s2x", s2, x, 7);
  const ArcId top = inst.AddArc("e1", v, w, 10);
  const ArcId bottom = inst.AddArc("e2", x, y, 10);
  const ArcId wt1 = inst.AddArc("wt1", w, t1, 2);
  const ArcId wt2 = inst.AddArc("wt2", w, t2, 9);
  const ArcId yt1 = inst.AddArc("yt1", y, t1, 7);
  const ArcId yt2 = inst.AddArc("yt2", y, t2, 4);

  UnsplittableSolution witness;
  witness.paths = {
      {s1, t1, Rational(3, 2), {s1v, top, wt1}},
      {s2, t1, Rational(13, 2), {s2x, bottom, yt1}},
      {s1, t2, Rational(7, 2), {s1x, bottom, yt2}},
      {s2, t2, Rational(17, 2), {s2v, top, wt2}},
  };
  return NonintegralInstance{std::move(inst), std::move(witness)};
}

Instance GenerateFromDisjointPaths(
    const Instance& base,
    const std::vector<std::pair<VertexId, VertexId>>& pairs) {
  const int k = static_cast<int>(pairs.size());
  if (k < 2) throw Error(ErrorCode::kPrecondition, "reduction needs k >= 2 pairs");
  std::set<VertexId> terminals;
  for (const auto& [s, t] : pairs) {
    if (!base.HasVertex(s) || !base.HasVertex(t)) {
      throw Error(ErrorCode::kInvalidInput, "terminal is not a vertex");
    }
    if (!terminals.insert(s).second || !terminals.insert(t).second) {
      throw Error(ErrorCode::kPrecondition, "terminals must be distinct");
    }
  }
  for (ArcId a = 0; a < base.num_arcs(); ++a) {
    if (base.capacity(a) != 1) {
      throw Error(ErrorCode::kPrecondition, "reduction needs unit capacities");
    }
  }
  Instance inst;
  for (VertexId v = 0; v < base.num_vertices(); ++v) inst.AddVertex(base.vertex_name(v));
  for (const auto& [s, t] : pairs) {
    inst.set_balance(s, k);
    inst.set_balance(t, -k);
  }
  for (ArcId a = 0; a < base.num_arcs(); ++a) {
    inst.AddArc(base.arc_name(a), base.tail(a), base.head(a), 1);
  }
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      if (i == j) continue;
      std::string name = Indexed("x", i + 1, j + 1);
      while (inst.FindArc(name)) name += "'";
      inst.AddArc(name, pairs[i].first, pairs[j].second, 1);
    }
  }
  return inst;
}

GeneratedInstance GenerateRandom(uint64_t seed, const RandomSpec& spec) {
  const int n = spec.vertices;
  if (n < 2 || spec.sources < 1 || spec.sinks < 1 ||
      spec.sources + spec.sinks > n || spec.paths < 1 ||
      spec.max_denominator < 1) {
    throw Error(ErrorCode::kPrecondition, "random spec out of range");
  }
  std::mt19937_64 rng(seed);

  // Sources are drawn from the lower half of the id range and sinks from the
  // upper half so every source precedes every sink.
  const int split = std::max(spec.sources, std::min(n - spec.sinks, n / 2));
  std::vector<int> low(split), high(n - split);
  for (int i = 0; i < split; ++i) low[i] = i;
  for (int i = split; i < n; ++i) high[i - split] = i;
  std::shuffle(low.begin(), low.end(), rng);
  std::shuffle(high.begin(), high.end(), rng);
  std::vector<int> sources(low.begin(), low.begin() + spec.sources);
  std::vector<int> sinks(high.begin(), high.begin() + spec.sinks);
  std::sort(sources.begin(), sources.end());
  std::sort(sinks.begin(), sinks.end());

  struct RawArc {
    int tail, head;
    Rational flow;
  };
  std::vector<RawArc> arcs;
  auto arc_between = [&](int u, int w) {
    if (Uniform(rng, 0, 3) != 0) {
      for (size_t a = 0; a < arcs.size(); ++a) {
        if (arcs[a].tail == u && arcs[a].head == w) return a;
      }
    }
    arcs.push_back(RawArc{u, w, 0});
    return arcs.size() - 1;
  };
  auto random_value = [&] {
    const int64_t den = Uniform(rng, 1, spec.max_denominator);
    Rational value(Uniform(rng, 1, 4 * den), den);
    value.canonicalize();
    return value;
  };

  for (int p = 0; p < spec.paths; ++p) {
    int t;
    // Make sure every sink receives something.
    if (p < spec.sinks) {
      t = sinks[p];
    } else {
      t = sinks[Uniform(rng, 0, spec.sinks - 1)];
    }
    const int s = sources[Uniform(rng, 0, spec.sources - 1)];
    const Rational value = random_value();
    int u = s;
    for (int v = s + 1; v < t; ++v) {
      if (Uniform(rng, 0, 2) == 0) {
        arcs[arc_between(u, v)].flow += value;
        u = v;
      }
    }
    arcs[arc_between(u, t)].flow += value;
  }
  for (int e = 0; e < spec.extra_arcs; ++e) {
    const int u = static_cast<int>(Uniform(rng, 0, n - 2));
    const int w = static_cast<int>(Uniform(rng, u + 1, n - 1));
    arcs.push_back(RawArc{u, w, 0});
  }

  Instance inst;
  for (int v = 0; v < n; ++v) inst.AddVertex(Indexed("v", v));
  std::vector<Rational> values;
  for (const RawArc& a : arcs) values.push_back(a.flow);
  // Balances first, with placeholder capacities, to learn d_max.
  {
    Instance probe;
    for (int v = 0; v < n; ++v) probe.AddVertex(Indexed("v", v));
    for (size_t a = 0; a < arcs.size(); ++a) {
      probe.AddArc(Indexed("a", static_cast<int>(a)), arcs[a].tail, arcs[a].head, 0);
    }
    const Flow flow(values);
    for (int v = 0; v < n; ++v) inst.set_balance(v, Excess(probe, flow, v));
  }
  const Rational d_max = inst.MaxDemand();
  Rational floor_capacity = 0;
  switch (spec.regime) {
    case DemandRegime::kFree:
      break;
    case DemandRegime::kQuarter:
      floor_capacity = 4 * d_max;
      break;
    case DemandRegime::kThird:
      floor_capacity = 3 * d_max;
      break;
    case DemandRegime::kBelow:
      floor_capacity = d_max + Rational(1, spec.max_denominator);
      break;
    case DemandRegime::kEqual:
      floor_capacity = d_max;
      break;
  }
  bool tight = false;
  for (size_t a = 0; a < arcs.size(); ++a) {
    Rational capacity = std::max(arcs[a].flow, floor_capacity);
    if (spec.regime == DemandRegime::kEqual && capacity == d_max && !tight) {
      tight = true;
    } else if (Uniform(rng, 0, 1) == 0) {
      capacity += random_value();
    }
    if (capacity == 0) capacity = random_value();
    inst.AddArc(Indexed("a", static_cast<int>(a)), arcs[a].tail, arcs[a].head,
                capacity);
  }
  if (spec.regime == DemandRegime::kEqual && !tight) {
    inst.AddArc(Indexed("a", static_cast<int>(arcs.size())), sources.front(),
                sinks.back(), d_max);
    values.push_back(0);
  }
  return GeneratedInstance{std::move(inst), Flow(std::move(values))};
}

}  // namespace unsplit
