// Copyright 2026 The cutremoval Authors.
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

// Dense linear programs over nonnegative variables and a two-phase primal
// simplex that exposes its final optimal tableau. Gomory cut generation reads
// that tableau directly, so the solver returns it in canonical form (basic
// columns form an identity) over original + slack columns.

#ifndef CUTREMOVAL_LP_CORE_H_
#define CUTREMOVAL_LP_CORE_H_

#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace cutremoval {

enum class Sense { kLe, kGe, kEq };

struct Row {
  std::vector<double> coeffs;
  double rhs = 0.0;
  Sense sense = Sense::kLe;
};

// min objective^T x  s.t.  rows,  x >= 0.
struct LinearProgram {
  int num_vars = 0;
  std::vector<double> objective;
  std::vector<Row> rows;

  void AddRow(std::vector<double> coeffs, Sense sense, double rhs);

  // Returns an empty string when every invariant holds, otherwise a
  // description of the first violation.
  std::string Validate() const;
  bool IsIntegral() const;
  int num_rows() const { return static_cast<int>(rows.size()); }
};

// Ax + Is = b with every slack carrying a +1 coefficient. GE rows are negated
// so that their slack is +1 as well; EQ rows carry no slack.
struct StandardForm {
  int num_vars = 0;
  int num_cols = 0;     // num_vars + number of slacks
  int slack_offset = 0;  // first slack column
  std::vector<std::vector<double>> aug_matrix;
  std::vector<double> rhs;
  std::vector<int> row_of_slack;  // slack index (col - slack_offset) -> row
  std::vector<int> slack_of_row;  // row -> slack column, -1 for EQ rows

  int num_rows() const { return static_cast<int>(rhs.size()); }
};

StandardForm ToStandardForm(const LinearProgram& lp);

enum class Arithmetic { kFloat, kRational };
enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

const char* ToString(LpStatus status);
const char* ToString(Arithmetic arithmetic);
std::optional<Arithmetic> ParseArithmetic(const std::string& name);

// Final optimal tableau over original + slack columns. Row i reads
//   x_{basis[i]} + sum_{j nonbasic} matrix[i][j] x_j = rhs_v[i].
// Rows of the standard form found redundant in phase 1 are dropped.
struct SimplexTableau {
  std::vector<int> basis;
  std::vector<std::vector<double>> matrix;
  std::vector<double> rhs_v;
  std::vector<double> objective_row;  // reduced costs

  int num_rows() const { return static_cast<int>(basis.size()); }
};

// Same tableau in exact arithmetic; only produced in rational mode.
struct RationalTableau {
  std::vector<int> basis;
  std::vector<std::vector<mpq_class>> matrix;
  std::vector<mpq_class> rhs_v;
};

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<double> x;  // original variables only
  double value = 0.0;
  std::optional<SimplexTableau> tableau;
  std::shared_ptr<const RationalTableau> exact_tableau;
  int pivots = 0;
};

struct SimplexOptions {
  Arithmetic arithmetic = Arithmetic::kFloat;
  double feasibility_tol = 1e-7;
  double optimality_tol = 1e-9;
  double pivot_tol = 1e-9;
};

// Raised when the pivot count exceeds 50 * (rows + cols).
class CycleLimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Dantzig pricing with a Bland fallback after 5 * (rows + cols) consecutive
// non-improving pivots. Phase 1 uses artificial variables on rows whose
// slack cannot start basic.
LpSolution SolveSimplex(const StandardForm& sf, std::span<const double> objective,
                        const SimplexOptions& options = {});

// Largest row violation of x relative to max(1, |rhs|, sum_j |a_j x_j|).
double MaxRelativeRowViolation(const LinearProgram& lp, std::span<const double> x);

// SolveSimplex, except that a float optimum violating a row of `lp` by more
// than 1e-6 relative is discarded and the LP solved again exactly.
LpSolution SolveVerified(const StandardForm& sf, const LinearProgram& lp,
                         const SimplexOptions& options = {});

// SolveVerified on the standard form of `lp`.
LpSolution SolveLp(const LinearProgram& lp, const SimplexOptions& options = {});

bool IsIntegral(std::span<const double> x, double tol = 1e-6);

double Dot(std::span<const double> a, std::span<const double> b);

}  // namespace cutremoval

#endif  // CUTREMOVAL_LP_CORE_H_
