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

#ifndef CUTREMOVAL_GOMORY_H_
#define CUTREMOVAL_GOMORY_H_

#include <cstdint>
#include <span>
#include <vector>

#include "cutremoval/lp_core.h"

namespace cutremoval {

enum class CutKind { kGomory, kBound };

// The half-space alpha^T x <= beta in original variable space.
struct Cut {
  std::vector<double> alpha;
  double beta = 0.0;
  int64_t id = -1;
  int born_iter = 0;
  CutKind kind = CutKind::kGomory;

  // Provenance of a Gomory cut: the standard-form column that was basic and
  // fractional in the source tableau row, its value, and the Euclidean norm
  // of that row. Unused (-1 / 0) for bound cuts.
  int source_column = -1;
  double source_value = 0.0;
  double row_norm = 0.0;

  double Activity(std::span<const double> x) const;
  // alpha^T x - beta; positive when x violates the cut.
  double Violation(std::span<const double> x) const;
};

struct CutPool {
  std::vector<Cut> cuts;
  int source_iter = 0;
  // Fractional rows whose cut vanished or failed integer snapping.
  int num_degenerate = 0;

  bool empty() const { return cuts.empty(); }
  int size() const { return static_cast<int>(cuts.size()); }
};

// Hands out run-unique cut ids.
class CutIdAllocator {
 public:
  explicit CutIdAllocator(int64_t first = 0) : next_(first) {}
  int64_t Next() { return next_++; }

 private:
  int64_t next_;
};

struct GomoryOptions {
  double integrality_tol = 1e-6;
  double zero_tol = 1e-9;
  // Tableau entries this close to an integer are treated as integral.
  double tableau_snap_tol = 1e-9;
  // Max residual allowed when snapping an eliminated cut of integral data to
  // integer coefficients.
  double integer_snap_tol = 1e-6;
};

// Tableau-space cut of one row, e^T x + r^T s <= d, split into the original
// block `e` and the slack block `r`.
struct TableauCut {
  std::vector<double> e;
  std::vector<double> r;
  double d = 0.0;
};

// (-L_i + floor(L_i))^T x~ <= -v_i + floor(v_i) for tableau row `row`.
TableauCut TableauRowCut(const SimplexTableau& tableau, int row,
                         const StandardForm& sf, double snap_tol = 1e-9);

// Substitutes s = b - A x: alpha = e - A^T r, beta = d - r^T b.
Cut EliminateSlacks(const TableauCut& tc, const StandardForm& sf);

// One cut per basic variable whose value is fractional beyond
// `integrality_tol`. When the LP data is integral the eliminated cut is
// snapped to integer coefficients; cuts that vanish or fail the snap are
// skipped and counted in `num_degenerate`.
CutPool GenerateCutpool(const LpSolution& sol, const StandardForm& sf,
                        const LinearProgram& lp, int iter,
                        CutIdAllocator& ids, const GomoryOptions& options = {});

using IntPoint = std::vector<int64_t>;

// True iff alpha.x_frac > beta + tol and alpha.p <= beta + tol for all points.
bool ValidateCut(const Cut& cut, std::span<const double> x_frac,
                 std::span<const IntPoint> integer_points, double tol = 1e-7);

// Appends each cut as an LE row.
LinearProgram WithCuts(const LinearProgram& base, std::span<const Cut> cuts);

}  // namespace cutremoval

#endif  // CUTREMOVAL_GOMORY_H_
