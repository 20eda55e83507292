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

#ifndef UNSPLIT_LP_H_
#define UNSPLIT_LP_H_

#include <utility>
#include <vector>

#include "unsplit/rational.h"

namespace unsplit {

enum class Relation { kLessEqual, kEqual, kGreaterEqual };

struct LinearConstraint {
  std::vector<std::pair<int, Rational>> terms;  // (variable, coefficient)
  Relation relation = Relation::kLessEqual;
  Rational rhs;
};

// minimize objective . x  subject to the constraints and x >= 0.
struct LinearProgram {
  int num_variables = 0;
  std::vector<Rational> objective;  // empty means the zero objective
  std::vector<LinearConstraint> constraints;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct LpResult {
  LpStatus status = LpStatus::kInfeasible;
  Rational objective;
  std::vector<Rational> values;
};

// Exact two-phase simplex with Bland's rule; terminates on every input.
LpResult SolveLp(const LinearProgram& lp);

// Branch and bound on top of SolveLp; `integral[j]` marks the variables
// that must take integer values.
LpResult SolveIntegerLp(const LinearProgram& lp,
                        const std::vector<bool>& integral);

}  // namespace unsplit

#endif  // UNSPLIT_LP_H_
