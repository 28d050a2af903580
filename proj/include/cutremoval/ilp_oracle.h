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

// Exact integer optima for desk-scale instances: an LP-based best-first
// branch-and-bound and an exhaustive enumerator used to cross-check it.

#ifndef CUTREMOVAL_ILP_ORACLE_H_
#define CUTREMOVAL_ILP_ORACLE_H_

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "cutremoval/gomory.h"
#include "cutremoval/lp_core.h"

namespace cutremoval {

enum class IlpStatus { kOptimal, kInfeasible, kNodeLimit };

const char* ToString(IlpStatus status);

struct IlpResult {
  IlpStatus status = IlpStatus::kInfeasible;
  IntPoint x_int;  // incumbent; empty when none was found
  double value = 0.0;
  int64_t nodes_explored = 0;
  bool proven = false;
};

struct IlpOptions {
  int64_t node_limit = 1'000'000;
  // Optional per-variable upper bounds added as rows; empty means none.
  std::vector<int64_t> var_upper_bounds;
  SimplexOptions lp;
  double integrality_tol = 1e-6;
};

IlpResult SolveIlp(const LinearProgram& lp, const IlpOptions& options = {});

// Thrown when enumeration would visit more than the node budget.
class TooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// All integer points 0 <= x <= bounds satisfying every row. Depth-first with
// interval pruning per row; exact for integral data.
std::vector<IntPoint> EnumerateIntegerPoints(const LinearProgram& lp,
                                             std::span<const int64_t> bounds,
                                             int64_t node_budget = 10'000'000);

// floor(max x_j) over the LP relaxation for each j. Throws std::runtime_error
// if some variable is unbounded or the LP is infeasible.
std::vector<int64_t> InferUpperBounds(const LinearProgram& lp);

// Row check in exact integer arithmetic when the data is integral.
bool IsFeasiblePoint(const LinearProgram& lp, std::span<const int64_t> x);

double ObjectiveValue(const LinearProgram& lp, std::span<const int64_t> x);

}  // namespace cutremoval

#endif  // CUTREMOVAL_ILP_ORACLE_H_
