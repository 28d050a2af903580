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

#include "cutremoval/gomory.h"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include <glog/logging.h>

namespace cutremoval {

double Cut::Activity(std::span<const double> x) const { return Dot(alpha, x); }

double Cut::Violation(std::span<const double> x) const {
  return Activity(x) - beta;
}

namespace {

double SnapFloor(double v, double tol) {
  const double r = std::round(v);
  if (std::abs(v - r) <= tol * std::max(1.0, std::abs(v))) return r;
  return std::floor(v);
}

double FracDistance(double v) { return std::abs(v - std::round(v)); }

double RowNorm(const std::vector<double>& row) {
  double s = 0.0;
  for (double v : row) s += v * v;
  return std::sqrt(s);
}

mpq_class FloorQ(const mpq_class& v) {
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
  return mpq_class(fl);
}

// Exact route for rational tableaus. With `integer_form` the cut is
// floor(L_x) x - floor(L_s) (b - A x) <= floor(v), which differs from the
// slack-eliminated fractional cut only by a multiple of the equality rows.
bool ExactRowCut(const RationalTableau& t, int row, const StandardForm& sf,
                 bool integer_form, std::vector<double>* alpha, double* beta) {
  const int n = sf.num_vars;
  auto part = [&](const mpq_class& v) {
    return integer_form ? FloorQ(v) : mpq_class(FloorQ(v) - v);
  };
  std::vector<mpq_class> a(n);
  for (int j = 0; j < n; ++j) a[j] = part(t.matrix[row][j]);
  mpq_class b = part(t.rhs_v[row]);
  for (int s = sf.slack_offset; s < sf.num_cols; ++s) {
    const mpq_class r = part(t.matrix[row][s]);
    if (sgn(r) == 0) continue;
    const int src = sf.row_of_slack[s - sf.slack_offset];
    for (int j = 0; j < n; ++j) {
      const double coef = sf.aug_matrix[src][j];
      if (coef != 0.0) a[j] -= r * mpq_class(coef);
    }
    b -= r * mpq_class(sf.rhs[src]);
  }
  alpha->assign(n, 0.0);
  bool nonzero = false;
  for (int j = 0; j < n; ++j) {
    (*alpha)[j] = a[j].get_d();
    nonzero |= sgn(a[j]) != 0;
  }
  *beta = b.get_d();
  return nonzero;
}

// Float version of the integer form above.
Cut IntegerFormCut(const SimplexTableau& t, int row, const StandardForm& sf,
                   double snap_tol) {
  const std::vector<double>& l = t.matrix[row];
  Cut cut;
  cut.alpha.assign(sf.num_vars, 0.0);
  for (int j = 0; j < sf.num_vars; ++j) cut.alpha[j] = SnapFloor(l[j], snap_tol);
  cut.beta = SnapFloor(t.rhs_v[row], snap_tol);
  for (int s = sf.slack_offset; s < sf.num_cols; ++s) {
    const double g = SnapFloor(l[s], snap_tol);
    if (g == 0.0) continue;
    const int src = sf.row_of_slack[s - sf.slack_offset];
    for (int j = 0; j < sf.num_vars; ++j) cut.alpha[j] -= g * sf.aug_matrix[src][j];
    cut.beta -= g * sf.rhs[src];
  }
  return cut;
}

bool HasEqualityRows(const StandardForm& sf) {
  for (int s : sf.slack_of_row) {
    if (s < 0) return true;
  }
  return false;
}

}  // namespace

TableauCut TableauRowCut(const SimplexTableau& tableau, int row,
                         const StandardForm& sf, double snap_tol) {
  const std::vector<double>& l = tableau.matrix[row];
  TableauCut tc;
  tc.e.assign(sf.num_vars, 0.0);
  tc.r.assign(sf.num_cols - sf.slack_offset, 0.0);
  for (int j = 0; j < sf.num_cols; ++j) {
    const double coef = -l[j] + SnapFloor(l[j], snap_tol);
    if (j < sf.slack_offset) {
      tc.e[j] = coef;
    } else {
      tc.r[j - sf.slack_offset] = coef;
    }
  }
  const double v = tableau.rhs_v[row];
  tc.d = -v + SnapFloor(v, snap_tol);
  return tc;
}

Cut EliminateSlacks(const TableauCut& tc, const StandardForm& sf) {
  Cut cut;
  cut.alpha = tc.e;
  cut.beta = tc.d;
  for (std::size_t s = 0; s < tc.r.size(); ++s) {
    const double r = tc.r[s];
    if (r == 0.0) continue;
    const int src = sf.row_of_slack[s];
    const std::vector<double>& a = sf.aug_matrix[src];
    for (int j = 0; j < sf.num_vars; ++j) cut.alpha[j] -= r * a[j];
    cut.beta -= r * sf.rhs[src];
  }
  return cut;
}

CutPool GenerateCutpool(const LpSolution& sol, const StandardForm& sf,
                        const LinearProgram& lp, int iter,
                        CutIdAllocator& ids, const GomoryOptions& options) {
  CutPool pool;
  pool.source_iter = iter;
  if (sol.status != LpStatus::kOptimal || !sol.tableau.has_value()) {
    return pool;
  }
  const SimplexTableau& t = *sol.tableau;
  const bool integral_data = lp.IsIntegral();
  // Without equality rows the two forms coincide; the literal elimination is
  // kept there and checked against integrality below.
  const bool integer_form = integral_data && HasEqualityRows(sf);
  for (int i = 0; i < t.num_rows(); ++i) {
    const double v = t.rhs_v[i];
    if (FracDistance(v) <= options.integrality_tol) continue;

    Cut cut;
    bool ok = true;
    if (sol.exact_tableau) {
      ok = ExactRowCut(*sol.exact_tableau, i, sf, integral_data, &cut.alpha,
                       &cut.beta);
    } else {
      cut = integer_form
                ? IntegerFormCut(t, i, sf, options.tableau_snap_tol)
                : EliminateSlacks(TableauRowCut(t, i, sf, options.tableau_snap_tol), sf);
      if (integral_data) {
        for (double& a : cut.alpha) {
          const double r = std::round(a);
          if (std::abs(a - r) > options.integer_snap_tol * std::max(1.0, std::abs(a))) {
            ok = false;
          }
          a = r;
        }
        const double rb = std::round(cut.beta);
        if (std::abs(cut.beta - rb) >
            options.integer_snap_tol * std::max(1.0, std::abs(cut.beta))) {
          ok = false;
        }
        cut.beta = rb;
      }
      bool nonzero = false;
      for (double& a : cut.alpha) {
        if (std::abs(a) < options.zero_tol) a = 0.0;
        nonzero |= a != 0.0;
      }
      ok = ok && nonzero;
    }
    if (!ok) {
      ++pool.num_degenerate;
      VLOG(2) << "degenerate Gomory row " << i << " at iteration " << iter;
      continue;
    }
    cut.kind = CutKind::kGomory;
    cut.born_iter = iter;
    cut.source_column = t.basis[i];
    cut.source_value = v;
    cut.row_norm = RowNorm(t.matrix[i]);
    cut.id = ids.Next();
    pool.cuts.push_back(std::move(cut));
  }
  return pool;
}

bool ValidateCut(const Cut& cut, std::span<const double> x_frac,
                 std::span<const IntPoint> integer_points, double tol) {
  if (!(cut.Violation(x_frac) > tol)) return false;
  std::vector<double> p;
  for (const IntPoint& point : integer_points) {
    p.assign(point.begin(), point.end());
    if (cut.Violation(p) > tol) return false;
  }
  return true;
}

LinearProgram WithCuts(const LinearProgram& base, std::span<const Cut> cuts) {
  LinearProgram lp = base;
  lp.rows.reserve(base.rows.size() + cuts.size());
  for (const Cut& cut : cuts) lp.AddRow(cut.alpha, Sense::kLe, cut.beta);
  return lp;
}

}  // namespace cutremoval
