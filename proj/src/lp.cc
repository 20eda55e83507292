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

#include "unsplit/lp.h"

#include <optional>

#include "unsplit/error.h"

namespace unsplit {
namespace {

class Tableau {
 public:
  Tableau(std::vector<std::vector<Rational>> rows, std::vector<int> basis)
      : rows_(std::move(rows)), basis_(std::move(basis)) {}

  int num_rows() const { return static_cast<int>(rows_.size()); }
  int num_columns() const {
    return rows_.empty() ? 0 : static_cast<int>(rows_.front().size()) - 1;
  }
  const Rational& rhs(int i) const { return rows_[i].back(); }
  const Rational& at(int i, int j) const { return rows_[i][j]; }
  int basis(int i) const { return basis_[i]; }

  void Pivot(int row, int column) {
    const Rational pivot = rows_[row][column];
    for (Rational& value : rows_[row]) value /= pivot;
    for (int i = 0; i < num_rows(); ++i) {
      if (i == row || rows_[i][column] == 0) continue;
      const Rational factor = rows_[i][column];
      for (size_t j = 0; j < rows_[i].size(); ++j) {
        rows_[i][j] -= factor * rows_[row][j];
      }
    }
    basis_[row] = column;
  }

  void DropRow(int row) {
    rows_.erase(rows_.begin() + row);
    basis_.erase(basis_.begin() + row);
  }

  // Minimizes cost . x over the current tableau, ignoring columns with
  // allowed[j] == false. Returns false when unbounded.
  bool Minimize(const std::vector<Rational>& cost,
                const std::vector<bool>& allowed) {
    while (true) {
      int entering = -1;
      for (int j = 0; j < num_columns() && entering < 0; ++j) {
        if (!allowed[j]) continue;
        Rational reduced = cost[j];
        for (int i = 0; i < num_rows(); ++i) {
          if (rows_[i][j] != 0) reduced -= cost[basis_[i]] * rows_[i][j];
        }
        if (reduced < 0) entering = j;
      }
      if (entering < 0) return true;
      int leaving = -1;
      Rational best;
      for (int i = 0; i < num_rows(); ++i) {
        if (rows_[i][entering] <= 0) continue;
        Rational ratio = rhs(i) / rows_[i][entering];
        if (leaving < 0 || ratio < best ||
            (ratio == best && basis_[i] < basis_[leaving])) {
          leaving = i;
          best = ratio;
        }
      }
      if (leaving < 0) return false;
      Pivot(leaving, entering);
    }
  }

  Rational Value(const std::vector<Rational>& cost) const {
    Rational total = 0;
    for (int i = 0; i < num_rows(); ++i) total += cost[basis_[i]] * rhs(i);
    return total;
  }

 private:
  std::vector<std::vector<Rational>> rows_;
  std::vector<int> basis_;
};

}  // namespace

LpResult SolveLp(const LinearProgram& lp) {
  const int n = lp.num_variables;
  if (!lp.objective.empty() && static_cast<int>(lp.objective.size()) != n) {
    throw Error(ErrorCode::kInvalidInput, "objective has the wrong length");
  }
  const int m = static_cast<int>(lp.constraints.size());
  int slacks = 0;
  int artificials = 0;
  for (const LinearConstraint& c : lp.constraints) {
    const bool flip = c.rhs < 0;
    Relation r = c.relation;
    if (flip && r == Relation::kLessEqual) {
      r = Relation::kGreaterEqual;
    } else if (flip && r == Relation::kGreaterEqual) {
      r = Relation::kLessEqual;
    }
    if (r != Relation::kEqual) ++slacks;
    if (r != Relation::kLessEqual) ++artificials;
  }
  const int columns = n + slacks + artificials;
  std::vector<std::vector<Rational>> rows(
      m, std::vector<Rational>(columns + 1, Rational(0)));
  std::vector<int> basis(m, -1);
  int next_slack = n;
  int next_artificial = n + slacks;
  for (int i = 0; i < m; ++i) {
    const LinearConstraint& c = lp.constraints[i];
    const Rational sign = c.rhs < 0 ? -1 : 1;
    for (const auto& [var, coef] : c.terms) {
      if (var < 0 || var >= n) {
        throw Error(ErrorCode::kInvalidInput, "constraint variable out of range");
      }
      rows[i][var] += sign * coef;
    }
    rows[i][columns] = sign * c.rhs;
    Relation r = c.relation;
    if (sign < 0 && r == Relation::kLessEqual) {
      r = Relation::kGreaterEqual;
    } else if (sign < 0 && r == Relation::kGreaterEqual) {
      r = Relation::kLessEqual;
    }
    if (r == Relation::kLessEqual) {
      rows[i][next_slack] = 1;
      basis[i] = next_slack++;
    } else {
      if (r == Relation::kGreaterEqual) rows[i][next_slack++] = -1;
      rows[i][next_artificial] = 1;
      basis[i] = next_artificial++;
    }
  }

  Tableau tableau(std::move(rows), std::move(basis));
  std::vector<bool> allowed(columns, true);
  if (artificials > 0) {
    std::vector<Rational> phase_one(columns, Rational(0));
    for (int j = n + slacks; j < columns; ++j) phase_one[j] = 1;
    tableau.Minimize(phase_one, allowed);
    if (tableau.Value(phase_one) > 0) return LpResult{};
    // Drive artificial variables out of the basis or drop redundant rows.
    for (int i = tableau.num_rows() - 1; i >= 0; --i) {
      if (tableau.basis(i) < n + slacks) continue;
      int column = -1;
      for (int j = 0; j < n + slacks && column < 0; ++j) {
        if (tableau.at(i, j) != 0) column = j;
      }
      if (column >= 0) {
        tableau.Pivot(i, column);
      } else {
        tableau.DropRow(i);
      }
    }
    for (int j = n + slacks; j < columns; ++j) allowed[j] = false;
  }

  std::vector<Rational> cost(columns, Rational(0));
  for (int j = 0; j < static_cast<int>(lp.objective.size()); ++j) {
    cost[j] = lp.objective[j];
  }
  LpResult result;
  if (!tableau.Minimize(cost, allowed)) {
    result.status = LpStatus::kUnbounded;
    return result;
  }
  result.status = LpStatus::kOptimal;
  result.objective = tableau.Value(cost);
  result.values.assign(n, Rational(0));
  for (int i = 0; i < tableau.num_rows(); ++i) {
    if (tableau.basis(i) < n) result.values[tableau.basis(i)] = tableau.rhs(i);
  }
  return result;
}

LpResult SolveIntegerLp(const LinearProgram& lp,
                        const std::vector<bool>& integral) {
  std::optional<LpResult> best;
  std::vector<LinearProgram> pending = {lp};
  while (!pending.empty()) {
    LinearProgram node = std::move(pending.back());
    pending.pop_back();
    LpResult relaxed = SolveLp(node);
    if (relaxed.status == LpStatus::kInfeasible) continue;
    if (relaxed.status == LpStatus::kUnbounded) {
      throw Error(ErrorCode::kPrecondition,
                  "integer program with an unbounded relaxation");
    }
    if (best && relaxed.objective >= best->objective) continue;
    int fractional = -1;
    for (int j = 0; j < lp.num_variables && fractional < 0; ++j) {
      if (integral[j] && !IsIntegral(relaxed.values[j])) fractional = j;
    }
    if (fractional < 0) {
      best = std::move(relaxed);
      continue;
    }
    const Rational value = relaxed.values[fractional];
    LinearProgram down = node;
    down.constraints.push_back(
        {{{fractional, Rational(1)}}, Relation::kLessEqual, Floor(value)});
    LinearProgram up = std::move(node);
    up.constraints.push_back(
        {{{fractional, Rational(1)}}, Relation::kGreaterEqual, Ceil(value)});
    pending.push_back(std::move(up));
    pending.push_back(std::move(down));
  }
  return best ? *best : LpResult{};
}

}  // namespace unsplit
