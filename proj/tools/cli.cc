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

#include "cli.h"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "unsplit/error.h"
#include "unsplit/flow_ops.h"
#include "unsplit/fractional.h"
#include "unsplit/instances.h"
#include "unsplit/oracle.h"
#include "unsplit/rounds.h"
#include "unsplit/solver.h"
#include "unsplit/text_io.h"
#include "unsplit/verify.h"

namespace unsplit {
namespace {

// Writes through `write` to `path`, or to `fallback` when `path` is empty.
void Emit(const std::string& path, std::ostream& fallback,
          const std::function<void(std::ostream&)>& write) {
  if (path.empty()) {
    write(fallback);
    return;
  }
  std::ofstream file(path);
  if (!file) throw Error(ErrorCode::kInvalidInput, "cannot write " + path);
  write(file);
}

std::ifstream OpenInput(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kInvalidInput, "cannot open " + path);
  return in;
}

int ExitFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInfeasible:
      return kExitInfeasible;
    case ErrorCode::kScaleGuard:
      return kExitScaleGuard;
    case ErrorCode::kInternal:
      return kExitCheckFailed;
    default:
      return kExitUsage;
  }
}

// Loads the flow file if given, otherwise computes a fractional flow.
Flow FlowFor(const Instance& instance, const std::string& flow_path) {
  if (!flow_path.empty()) return ReadFlowFile(flow_path, instance);
  FractionalResult fractional = SolveFractional(instance);
  if (!fractional.feasible) {
    throw Error(ErrorCode::kInfeasible, "no feasible b-transshipment exists");
  }
  return fractional.flow;
}

struct GenArgs {
  std::string family;
  int q = 3;
  int k = 1;
  uint64_t seed = 1;
  RandomSpec spec;
  std::string regime = "free";
  std::string base;
  std::string pairs;
  std::string out;
  std::string flow_out;
  std::string witness_out;
};

struct SolveArgs {
  std::string instance;
  std::string flow;
  std::string variant = "upper";
  std::string out;
  bool check_invariants = false;
};

struct RoundsArgs {
  std::string instance;
  std::string flow;
  std::string scheme = "general";
  int n = 0;
  std::string out;
};

struct VerifyArgs {
  std::string instance;
  std::string solution;
  std::string flow;
  std::string direction = "upper";
  std::string bound;
  std::string format = "text";
  bool plan = false;
  bool capacity = false;
};

struct OracleArgs {
  std::string instance;
  bool integral = false;
  std::string violation_flow;
  bool confluent = false;
  int64_t max_nodes = OracleLimits{}.max_nodes;
};

int RunGen(const GenArgs& a, std::ostream& out) {
  std::optional<Flow> flow;
  Instance instance;
  if (a.family == "tightness") {
    GeneratedInstance g = GenerateTightness(a.q, a.k);
    instance = std::move(g.instance);
    flow = std::move(g.flow);
  } else if (a.family == "confluence") {
    instance = GenerateCostOfConfluence(a.q);
  } else if (a.family == "nonintegral") {
    NonintegralInstance g = GenerateNonintegral();
    instance = std::move(g.instance);
    if (!a.witness_out.empty()) {
      Emit(a.witness_out, out, [&](std::ostream& o) {
        WriteSolution(o, instance, g.witness);
      });
    }
  } else if (a.family == "reduction") {
    if (a.base.empty() || a.pairs.empty()) {
      throw Error(ErrorCode::kInvalidInput, "reduction needs --base and --pairs");
    }
    const Instance base = ReadInstanceFile(a.base);
    std::vector<std::pair<VertexId, VertexId>> pairs;
    std::stringstream list(a.pairs);
    std::string item;
    while (std::getline(list, item, ',')) {
      const size_t colon = item.find(':');
      if (colon == std::string::npos) {
        throw Error(ErrorCode::kInvalidInput, "pair must look like s:t");
      }
      auto s = base.FindVertex(item.substr(0, colon));
      auto t = base.FindVertex(item.substr(colon + 1));
      if (!s || !t) throw Error(ErrorCode::kInvalidInput, "unknown vertex in " + item);
      pairs.push_back({*s, *t});
    }
    instance = GenerateFromDisjointPaths(base, pairs);
  } else if (a.family == "random") {
    static const std::map<std::string, DemandRegime> kRegimes = {
        {"free", DemandRegime::kFree},   {"quarter", DemandRegime::kQuarter},
        {"third", DemandRegime::kThird}, {"below", DemandRegime::kBelow},
        {"equal", DemandRegime::kEqual}};
    RandomSpec spec = a.spec;
    auto it = kRegimes.find(a.regime);
    if (it == kRegimes.end()) {
      throw Error(ErrorCode::kInvalidInput, "unknown regime " + a.regime);
    }
    spec.regime = it->second;
    GeneratedInstance g = GenerateRandom(a.seed, spec);
    instance = std::move(g.instance);
    flow = std::move(g.flow);
  } else {
    throw Error(ErrorCode::kInvalidInput, "unknown family " + a.family);
  }
  Emit(a.out, out, [&](std::ostream& o) { WriteInstance(o, instance); });
  if (flow && !a.flow_out.empty()) {
    Emit(a.flow_out, out, [&](std::ostream& o) { WriteFlow(o, instance, *flow); });
  }
  return kExitOk;
}

int RunFractional(const std::string& instance_path, const std::string& out_path,
                  std::ostream& out, std::ostream& err) {
  const Instance instance = ReadInstanceFile(instance_path);
  if (auto problems = ValidateInstance(instance); !problems.empty()) {
    throw Error(ErrorCode::kInvalidInput, problems.front());
  }
  FractionalResult result = SolveFractional(instance);
  if (!result.feasible) {
    err << "infeasible: cut capacity " << FormatRational(result.witness.capacity)
        << " < required " << FormatRational(result.witness.required) << "; side";
    for (VertexId v : result.witness.source_side) err << " " << instance.vertex_name(v);
    err << "\n";
    return kExitInfeasible;
  }
  Emit(out_path, out, [&](std::ostream& o) { WriteFlow(o, instance, result.flow); });
  return kExitOk;
}

int RunSolve(const SolveArgs& a, std::ostream& out) {
  static const std::map<std::string, Variant> kVariants = {
      {"upper", Variant::kUpper},
      {"lower", Variant::kLower},
      {"reversed", Variant::kReversed},
      {"auto", Variant::kAuto}};
  const Instance instance = ReadInstanceFile(a.instance);
  const Flow flow = FlowFor(instance, a.flow);
  SolveOptions options;
  options.check_invariants = a.check_invariants;
  options.record_events = a.check_invariants;
  const SolveResult result =
      Solve(instance, flow, kVariants.at(a.variant), options);
  const ReportStats stats = ComputeStats(instance, result.solution, &flow);
  SolutionStats block;
  block.entries.push_back(
      {"variant", result.reversed ? "reversed"
                  : result.direction == BoundDirection::kLower ? "lower"
                                                               : "upper"});
  block.entries.push_back({"bound", FormatRational(result.bound)});
  block.entries.push_back({"paths", std::to_string(stats.path_count)});
  block.entries.push_back({"iterations", std::to_string(result.iterations)});
  if (stats.max_increase) {
    block.entries.push_back({"max_increase", FormatRational(*stats.max_increase)});
  }
  if (stats.congestion) {
    block.entries.push_back({"congestion", FormatRational(*stats.congestion)});
  }
  Emit(a.out, out, [&](std::ostream& o) {
    WriteSolution(o, instance, result.solution, &block);
  });
  return kExitOk;
}

int RunRounds(const RoundsArgs& a, std::ostream& out, std::ostream& err) {
  const Instance instance = ReadInstanceFile(a.instance);
  const Flow flow = FlowFor(instance, a.flow);
  RoundPlan plan;
  if (a.scheme == "general") {
    plan = RouteGeneralRounds(instance, flow,
                              a.n > 0 ? std::optional<int>(a.n) : std::nullopt);
  } else if (a.scheme == "six") {
    plan = RouteSixRounds(instance, flow);
  } else {
    plan = RouteFourRounds(instance, flow);
  }
  Emit(a.out, out, [&](std::ostream& o) {
    o << "# rounds " << plan.rounds.size() << " bound " << plan.round_bound
      << " copies " << plan.copies << "\n";
    WritePlan(o, instance, plan.rounds);
  });
  const std::vector<std::string> problems = VerifyRoundPlan(instance, plan.rounds);
  for (const std::string& p : problems) err << p << "\n";
  return problems.empty() ? kExitOk : kExitCheckFailed;
}

int RunVerify(const VerifyArgs& a, std::ostream& out) {
  const Instance instance = ReadInstanceFile(a.instance);
  const ReportFormat format =
      a.format == "kv" ? ReportFormat::kKeyValue : ReportFormat::kText;
  if (a.plan) {
    std::ifstream in = OpenInput(a.solution);
    const std::vector<PlanRound> rounds = ParsePlan(in, instance);
    const std::vector<std::string> problems = VerifyRoundPlan(instance, rounds);
    CheckReport report;
    CheckOutcome outcome;
    outcome.name = "round_plan";
    outcome.passed = problems.empty();
    if (!problems.empty()) outcome.witness = problems.front();
    report.checks.push_back(outcome);
    for (const PlanRound& r : rounds) {
      report.stats.path_count += static_cast<int>(r.solution.paths.size());
    }
    WriteReport(out, report, format);
    if (format == ReportFormat::kText) out << "rounds: " << rounds.size() << "\n";
    return report.passed() ? kExitOk : kExitCheckFailed;
  }
  const UnsplittableSolution solution = ReadSolutionFile(a.solution, instance);
  CheckReport report = CheckUnsplittable(instance, solution);
  report.Append(CheckConfluence(instance, solution));
  report.Append(CheckBipartiteTree(instance, solution));
  if (a.capacity) report.Append(CheckCapacity(instance, solution));
  if (!a.flow.empty()) {
    const Flow flow = ReadFlowFile(a.flow, instance);
    std::optional<Rational> bound;
    if (!a.bound.empty()) {
      bound = ParseRational(a.bound);
      if (!bound) throw Error(ErrorCode::kInvalidInput, "bad --bound " + a.bound);
    }
    const CheckReport dgg = CheckDggBound(
        instance, flow, solution,
        a.direction == "lower" ? BoundDirection::kLower : BoundDirection::kUpper,
        bound);
    report.Append(dgg);
    report.stats.max_increase = dgg.stats.max_increase;
  }
  WriteReport(out, report, format);
  return report.passed() ? kExitOk : kExitCheckFailed;
}

int RunOracle(const OracleArgs& a, std::ostream& out) {
  const Instance instance = ReadInstanceFile(a.instance);
  OracleLimits limits;
  limits.max_nodes = a.max_nodes;
  if (!a.violation_flow.empty()) {
    const Flow reference = ReadFlowFile(a.violation_flow, instance);
    const ViolationResult result =
        a.confluent ? MinConfluentViolation(instance, reference, limits)
                    : MinViolation(instance, reference, limits);
    out << "min_violation " << FormatRational(result.violation) << "\n";
    WriteSolution(out, instance, result.witness);
    return kExitOk;
  }
  const FeasibilityResult result = BruteForceFeasible(instance, a.integral, limits);
  if (!result.feasible) {
    out << "infeasible\n";
    return kExitInfeasible;
  }
  out << "feasible\n";
  WriteSolution(out, instance, result.witness);
  return kExitOk;
}

int RunDecompose(const std::string& instance_path, const std::string& flow_path,
                 std::ostream& out) {
  const Instance instance = ReadInstanceFile(instance_path);
  const Flow flow = ReadFlowFile(flow_path, instance);
  const Decomposition d = Decompose(instance, flow);
  UnsplittableSolution paths{d.paths};
  WriteSolution(out, instance, paths);
  for (const CycleFlow& cycle : d.cycles) {
    out << "# cycle " << FormatRational(cycle.value);
    for (ArcId a : cycle.arcs) out << " " << instance.arc_name(a);
    out << "\n";
  }
  return kExitOk;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Unsplittable transshipments with exact arithmetic"};
  app.require_subcommand(1);

  GenArgs gen;
  CLI::App* gen_cmd = app.add_subcommand("gen", "Generate an instance");
  gen_cmd->add_option("--family", gen.family)
      ->required()
      ->check(CLI::IsMember({"tightness", "confluence", "nonintegral",
                             "reduction", "random"}));
  gen_cmd->add_option("--q", gen.q);
  gen_cmd->add_option("--k", gen.k);
  gen_cmd->add_option("--seed", gen.seed);
  gen_cmd->add_option("--vertices", gen.spec.vertices);
  gen_cmd->add_option("--sources", gen.spec.sources);
  gen_cmd->add_option("--sinks", gen.spec.sinks);
  gen_cmd->add_option("--paths", gen.spec.paths);
  gen_cmd->add_option("--extra-arcs", gen.spec.extra_arcs);
  gen_cmd->add_option("--max-denominator", gen.spec.max_denominator);
  gen_cmd->add_option("--regime", gen.regime);
  gen_cmd->add_option("--base", gen.base, "Base digraph for the reduction");
  gen_cmd->add_option("--pairs", gen.pairs, "Terminal pairs s1:t1,s2:t2,...");
  gen_cmd->add_option("-o,--out", gen.out);
  gen_cmd->add_option("--flow-out", gen.flow_out);
  gen_cmd->add_option("--witness-out", gen.witness_out);

  std::string frac_instance, frac_out;
  CLI::App* frac_cmd =
      app.add_subcommand("fractional", "Compute a feasible b-transshipment");
  frac_cmd->add_option("instance", frac_instance)->required();
  frac_cmd->add_option("-o,--out", frac_out);

  SolveArgs solve;
  CLI::App* solve_cmd = app.add_subcommand("solve", "Compute an unsplittable solution");
  solve_cmd->add_option("instance", solve.instance)->required();
  solve_cmd->add_option("--flow", solve.flow);
  solve_cmd->add_option("--variant", solve.variant)
      ->check(CLI::IsMember({"upper", "lower", "reversed", "auto"}));
  solve_cmd->add_option("-o,--out", solve.out);
  solve_cmd->add_flag("--check-invariants", solve.check_invariants);

  RoundsArgs rounds;
  CLI::App* rounds_cmd = app.add_subcommand("rounds", "Route all demands in rounds");
  rounds_cmd->add_option("instance", rounds.instance)->required();
  rounds_cmd->add_option("--flow", rounds.flow);
  rounds_cmd->add_option("--scheme", rounds.scheme)
      ->check(CLI::IsMember({"general", "six", "four"}));
  rounds_cmd->add_option("--n", rounds.n);
  rounds_cmd->add_option("-o,--out", rounds.out);

  VerifyArgs verify;
  CLI::App* verify_cmd = app.add_subcommand("verify", "Check a solution or plan");
  verify_cmd->add_option("instance", verify.instance)->required();
  verify_cmd->add_option("solution", verify.solution)->required();
  verify_cmd->add_option("--flow", verify.flow);
  verify_cmd->add_option("--direction", verify.direction)
      ->check(CLI::IsMember({"upper", "lower"}));
  verify_cmd->add_option("--bound", verify.bound);
  verify_cmd->add_option("--format", verify.format)
      ->check(CLI::IsMember({"text", "kv"}));
  verify_cmd->add_flag("--plan", verify.plan);
  verify_cmd->add_flag("--capacity", verify.capacity);

  OracleArgs oracle;
  CLI::App* oracle_cmd = app.add_subcommand("oracle", "Exhaustive feasibility search");
  oracle_cmd->add_option("instance", oracle.instance)->required();
  oracle_cmd->add_flag("--integral", oracle.integral);
  oracle_cmd->add_option("--violation", oracle.violation_flow,
                         "Minimize the violation against this flow");
  oracle_cmd->add_flag("--confluent", oracle.confluent);
  oracle_cmd->add_option("--max-nodes", oracle.max_nodes);

  std::string dec_instance, dec_flow;
  CLI::App* dec_cmd = app.add_subcommand("decompose", "Path/cycle decomposition");
  dec_cmd->add_option("instance", dec_instance)->required();
  dec_cmd->add_option("flow", dec_flow)->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (gen_cmd->parsed()) return RunGen(gen, out);
    if (frac_cmd->parsed()) return RunFractional(frac_instance, frac_out, out, err);
    if (solve_cmd->parsed()) return RunSolve(solve, out);
    if (rounds_cmd->parsed()) return RunRounds(rounds, out, err);
    if (verify_cmd->parsed()) return RunVerify(verify, out);
    if (oracle_cmd->parsed()) return RunOracle(oracle, out);
    if (dec_cmd->parsed()) return RunDecompose(dec_instance, dec_flow, out);
  } catch (const Error& e) {
    err << ErrorCodeName(e.code()) << ": " << e.what() << "\n";
    return ExitFor(e.code());
  }
  return kExitUsage;
}

}  // namespace unsplit
