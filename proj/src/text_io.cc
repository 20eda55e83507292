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

#include "unsplit/text_io.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "unsplit/error.h"

namespace unsplit {
namespace {

struct Line {
  int number = 0;
  std::vector<std::string> tokens;
};

// Splits the stream into non-empty, comment-stripped token lists.
std::vector<Line> Tokenize(std::istream& in) {
  std::vector<Line> lines;
  std::string text;
  int number = 0;
  while (std::getline(in, text)) {
    ++number;
    if (auto hash = text.find('#'); hash != std::string::npos) {
      text.resize(hash);
    }
    std::istringstream fields(text);
    Line line{number, {}};
    for (std::string token; fields >> token;) line.tokens.push_back(token);
    if (!line.tokens.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

[[noreturn]] void Fail(const Line& line, const std::string& what) {
  throw Error(ErrorCode::kInvalidInput,
              "line " + std::to_string(line.number) + ": " + what);
}

Rational Number(const Line& line, const std::string& token) {
  auto value = ParseRational(token);
  if (!value) Fail(line, "bad number '" + token + "'");
  return *value;
}

VertexId Vertex(const Line& line, const Instance& instance,
                const std::string& token) {
  auto v = instance.FindVertex(token);
  if (!v) Fail(line, "unknown vertex '" + token + "'");
  return *v;
}

ArcId ArcByName(const Line& line, const Instance& instance,
                const std::string& token) {
  auto a = instance.FindArc(token);
  if (!a) Fail(line, "unknown arc '" + token + "'");
  return *a;
}

PathFlow ParsePathLine(const Line& line, const Instance& instance) {
  if (line.tokens.size() < 5) Fail(line, "path needs at least one arc");
  PathFlow path;
  path.source = Vertex(line, instance, line.tokens[1]);
  path.sink = Vertex(line, instance, line.tokens[2]);
  path.value = Number(line, line.tokens[3]);
  for (size_t i = 4; i < line.tokens.size(); ++i) {
    path.arcs.push_back(ArcByName(line, instance, line.tokens[i]));
  }
  return path;
}

void WritePathLine(std::ostream& out, const Instance& instance,
                   const PathFlow& path) {
  out << "p " << instance.vertex_name(path.source) << ' '
      << instance.vertex_name(path.sink) << ' ' << FormatRational(path.value);
  for (ArcId a : path.arcs) out << ' ' << instance.arc_name(a);
  out << '\n';
}

std::ifstream OpenOrThrow(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kInvalidInput, "cannot open " + path);
  return in;
}

}  // namespace

Instance ParseInstance(std::istream& in) {
  Instance instance;
  for (const Line& line : Tokenize(in)) {
    const std::string& kind = line.tokens[0];
    if (kind == "v") {
      if (line.tokens.size() != 3) Fail(line, "expected: v <id> <balance>");
      instance.AddVertex(line.tokens[1], Number(line, line.tokens[2]));
    } else if (kind == "a") {
      if (line.tokens.size() != 5) {
        Fail(line, "expected: a <id> <tail> <head> <capacity>");
      }
      const VertexId tail = Vertex(line, instance, line.tokens[2]);
      const VertexId head = Vertex(line, instance, line.tokens[3]);
      try {
        instance.AddArc(line.tokens[1], tail, head,
                        Number(line, line.tokens[4]));
      } catch (const Error& e) {
        Fail(line, e.what());
      }
    } else {
      Fail(line, "unknown record '" + kind + "'");
    }
  }
  return instance;
}

void WriteInstance(std::ostream& out, const Instance& instance) {
  for (VertexId v = 0; v < instance.num_vertices(); ++v) {
    out << "v " << instance.vertex_name(v) << ' '
        << FormatRational(instance.balance(v)) << '\n';
  }
  for (ArcId a = 0; a < instance.num_arcs(); ++a) {
    out << "a " << instance.arc_name(a) << ' '
        << instance.vertex_name(instance.tail(a)) << ' '
        << instance.vertex_name(instance.head(a)) << ' '
        << FormatRational(instance.capacity(a)) << '\n';
  }
}

Flow ParseFlow(std::istream& in, const Instance& instance) {
  Flow flow(instance.num_arcs());
  std::vector<bool> seen(instance.num_arcs(), false);
  for (const Line& line : Tokenize(in)) {
    if (line.tokens[0] != "f" || line.tokens.size() != 3) {
      Fail(line, "expected: f <arc-id> <value>");
    }
    const ArcId a = ArcByName(line, instance, line.tokens[1]);
    if (seen[a]) Fail(line, "duplicate flow value for arc " + line.tokens[1]);
    seen[a] = true;
    flow[a] = Number(line, line.tokens[2]);
  }
  return flow;
}

void WriteFlow(std::ostream& out, const Instance& instance, const Flow& flow) {
  for (ArcId a = 0; a < instance.num_arcs(); ++a) {
    out << "f " << instance.arc_name(a) << ' ' << FormatRational(flow[a])
        << '\n';
  }
}

UnsplittableSolution ParseSolution(std::istream& in,
                                   const Instance& instance) {
  UnsplittableSolution solution;
  for (const Line& line : Tokenize(in)) {
    if (line.tokens[0] != "p") Fail(line, "expected a path record");
    solution.paths.push_back(ParsePathLine(line, instance));
  }
  return solution;
}

void WriteSolution(std::ostream& out, const Instance& instance,
                   const UnsplittableSolution& solution,
                   const SolutionStats* stats) {
  for (const PathFlow& path : solution.paths) {
    WritePathLine(out, instance, path);
  }
  if (stats != nullptr) {
    out << "# stats\n";
    for (const auto& [key, value] : stats->entries) {
      out << "# " << key << ' ' << value << '\n';
    }
  }
}

std::vector<PlanRound> ParsePlan(std::istream& in, const Instance& instance) {
  std::vector<PlanRound> rounds;
  for (const Line& line : Tokenize(in)) {
    if (line.tokens[0] == "round") {
      if (line.tokens.size() != 2) Fail(line, "expected: round <i>");
      if (line.tokens[1] != std::to_string(rounds.size())) {
        Fail(line, "rounds must be numbered 0, 1, ...");
      }
      rounds.emplace_back();
    } else if (line.tokens[0] == "p") {
      if (rounds.empty()) Fail(line, "path before the first round header");
      PathFlow path = ParsePathLine(line, instance);
      auto& sinks = rounds.back().sinks;
      if (std::find(sinks.begin(), sinks.end(), path.sink) == sinks.end()) {
        sinks.push_back(path.sink);
      }
      rounds.back().solution.paths.push_back(std::move(path));
    } else {
      Fail(line, "unknown record '" + line.tokens[0] + "'");
    }
  }
  return rounds;
}

void WritePlan(std::ostream& out, const Instance& instance,
               const std::vector<PlanRound>& rounds) {
  for (size_t i = 0; i < rounds.size(); ++i) {
    out << "round " << i << '\n';
    WriteSolution(out, instance, rounds[i].solution);
  }
}

Instance ReadInstanceFile(const std::string& path) {
  auto in = OpenOrThrow(path);
  return ParseInstance(in);
}

Flow ReadFlowFile(const std::string& path, const Instance& instance) {
  auto in = OpenOrThrow(path);
  return ParseFlow(in, instance);
}

UnsplittableSolution ReadSolutionFile(const std::string& path,
                                      const Instance& instance) {
  auto in = OpenOrThrow(path);
  return ParseSolution(in, instance);
}

}  // namespace unsplit
