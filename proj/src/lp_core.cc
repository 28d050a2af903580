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

#include "cutremoval/lp_core.h"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <glog/logging.h>

namespace cutremoval {

void LinearProgram::AddRow(std::vector<double> coeffs, Sense sense,
                           double rhs) {
  rows.push_back(Row{std::move(coeffs), rhs, sense});
}

std::string LinearProgram::Validate() const {
  if (num_vars < 0) return "negative variable count";
  if (static_cast<int>(objective.size()) != num_vars) {
    return "objective length differs from num_vars";
  }
  for (double c : objective) {
    if (!std::isfinite(c)) return "non-finite objective coefficient";
  }
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (static_cast<int>(rows[r].coeffs.size()) != num_vars) {
      return "row " + std::to_string(r) + " has wrong length";
    }
    if (!std::isfinite(rows[r].rhs)) {
      return "row " + std::to_string(r) + " has non-finite rhs";
    }
    for (double a : rows[r].coeffs) {
      if (!std::isfinite(a)) {
        return "row " + std::to_string(r) + " has non-finite coefficient";
      }
    }
  }
  return "";
}

bool LinearProgram::IsIntegral() const {
  auto integral = [](double v) { return v == std::floor(v); };
  if (!std::all_of(objective.begin(), objective.end(), integral)) return false;
  for (const Row& row : rows) {
    if (!integral(row.rhs)) return false;
    if (!std::all_of(row.coeffs.begin(), row.coeffs.end(), integral)) {
      return false;
    }
  }
  return true;
}

StandardForm ToStandardForm(const LinearProgram& lp) {
  StandardForm sf;
  sf.num_vars = lp.num_vars;
  sf.slack_offset = lp.num_vars;
  int num_slacks = 0;
  for (const Row& row : lp.rows) {
    if (row.sense != Sense::kEq) ++num_slacks;
  }
  sf.num_cols = lp.num_vars + num_slacks;
  sf.aug_matrix.reserve(lp.rows.size());
  sf.slack_of_row.assign(lp.rows.size(), -1);
  int next_slack = sf.slack_offset;
  for (std::size_t r = 0; r < lp.rows.size(); ++r) {
    const Row& row = lp.rows[r];
    std::vector<double> aug(sf.num_cols, 0.0);
    const double sign = row.sense == Sense::kGe ? -1.0 : 1.0;
    for (int j = 0; j < lp.num_vars; ++j) aug[j] = sign * row.coeffs[j];
    if (row.sense != Sense::kEq) {
      aug[next_slack] = 1.0;
      sf.slack_of_row[r] = next_slack;
      sf.row_of_slack.push_back(static_cast<int>(r));
      ++next_slack;
    }
    sf.aug_matrix.push_back(std::move(aug));
    sf.rhs.push_back(sign * row.rhs);
  }
  return sf;
}

const char* ToString(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal:
      return "Optimal";
    case LpStatus::kInfeasible:
      return "Infeasible";
    case LpStatus::kUnbounded:
      return "Unbounded";
  }
  return "?";
}

const char* ToString(Arithmetic arithmetic) {
  return arithmetic == Arithmetic::kFloat ? "float" : "rational";
}

std::optional<Arithmetic> ParseArithmetic(const std::string& name) {
  if (name == "float") return Arithmetic::kFloat;
  if (name == "rational") return Arithmetic::kRational;
  return std::nullopt;
}

namespace {

// Tolerance-aware comparisons; the rational specialization is exact.
template <typename T>
struct Num;

template <>
struct Num<double> {
  static bool Zero(double v, double tol) { return std::abs(v) <= tol; }
  static bool Neg(double v, double tol) { return v < -tol; }
  static bool Pos(double v, double tol) { return v > tol; }
  static double ToDouble(double v) { return v; }
  static double From(double v) { return v; }
  static double Abs(double v) { return std::abs(v); }
};

template <>
struct Num<mpq_class> {
  static bool Zero(const mpq_class& v, double) { return sgn(v) == 0; }
  static bool Neg(const mpq_class& v, double) { return sgn(v) < 0; }
  static bool Pos(const mpq_class& v, double) { return sgn(v) > 0; }
  static double ToDouble(const mpq_class& v) { return v.get_d(); }
  static mpq_class From(double v) { return mpq_class(v); }
  static mpq_class Abs(const mpq_class& v) { return abs(v); }
};

enum class RunResult { kOptimal, kUnbounded };

// Dense tableau; column `width - 1` holds the right-hand side and the cost
// row holds reduced costs with -z in its last entry.
template <typename T>
class DenseTableau {
 public:
  DenseTableau(int rows, int cols)
      : rows_(rows), cols_(cols), data_(std::size_t(rows) * (cols + 1)),
        cost_(cols + 1), basis_(rows, -1) {}

  T& at(int r, int c) { return data_[std::size_t(r) * (cols_ + 1) + c]; }
  const T& at(int r, int c) const {
    return data_[std::size_t(r) * (cols_ + 1) + c];
  }
  T& rhs(int r) { return at(r, cols_); }
  const T& rhs(int r) const { return at(r, cols_); }
  T& cost(int c) { return cost_[c]; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::vector<int>& basis() { return basis_; }

  // Reduced costs for `c` given the current (canonical) basis.
  void PriceOut(const std::vector<T>& c) {
    for (int j = 0; j <= cols_; ++j) cost_[j] = j < cols_ ? c[j] : T(0);
    for (int r = 0; r < rows_; ++r) {
      const T& cb = c[basis_[r]];
      if (Num<T>::Zero(cb, 0.0)) continue;
      for (int j = 0; j <= cols_; ++j) cost_[j] -= cb * at(r, j);
    }
  }

  void Pivot(int p, int q) {
    const T inv = T(1) / at(p, q);
    for (int j = 0; j <= cols_; ++j) at(p, j) *= inv;
    at(p, q) = T(1);
    for (int r = 0; r < rows_; ++r) {
      if (r == p) continue;
      const T f = at(r, q);
      if (Num<T>::Zero(f, 0.0)) continue;
      for (int j = 0; j <= cols_; ++j) {
        if (!Num<T>::Zero(at(p, j), 0.0)) at(r, j) -= f * at(p, j);
      }
      at(r, q) = T(0);
      Clean(r);
    }
    const T f = cost_[q];
    if (!Num<T>::Zero(f, 0.0)) {
      for (int j = 0; j <= cols_; ++j) cost_[j] -= f * at(p, j);
      cost_[q] = T(0);
    }
    basis_[p] = q;
  }

  // Primal simplex over columns [0, active_cols). Returns when optimal or an
  // unbounded ray is found.
  RunResult Run(int active_cols, const SimplexOptions& opt, int* pivots,
                int pivot_limit, int degenerate_limit) {
    bool bland = false;
    int non_improving = 0;
    while (true) {
      int q = -1;
      for (int j = 0; j < active_cols; ++j) {
        if (!Num<T>::Neg(cost_[j], opt.optimality_tol)) continue;
        if (q < 0 || (!bland && cost_[j] < cost_[q])) q = j;
        if (bland) break;
      }
      if (q < 0) return RunResult::kOptimal;

      int p = -1;
      T best_ratio = T(0);
      for (int r = 0; r < rows_; ++r) {
        if (!Num<T>::Pos(at(r, q), opt.pivot_tol)) continue;
        T b = rhs(r);
        if (Num<T>::Neg(b, 0.0)) b = T(0);
        const T ratio = b / at(r, q);
        if (p < 0 || ratio < best_ratio) {
          p = r;
          best_ratio = ratio;
        } else if (ratio == best_ratio || TiedRatio(ratio, best_ratio)) {
          const bool take = bland ? basis_[r] < basis_[p]
                                  : Num<T>::Abs(at(r, q)) > Num<T>::Abs(at(p, q));
          if (take) {
            p = r;
            best_ratio = ratio;
          }
        }
      }
      if (p < 0) return RunResult::kUnbounded;

      if (++*pivots > pivot_limit) {
        throw CycleLimitExceeded("simplex exceeded " +
                                 std::to_string(pivot_limit) + " pivots");
      }
      const bool improving =
          Num<T>::Pos(best_ratio * Num<T>::Abs(cost_[q]), opt.optimality_tol);
      Pivot(p, q);
      if (improving) {
        non_improving = 0;
      } else if (++non_improving >= degenerate_limit) {
        bland = true;
      }
    }
  }

 private:
  static bool TiedRatio(const T& a, const T& b);
  void Clean(int r);

  int rows_;
  int cols_;
  std::vector<T> data_;
  std::vector<T> cost_;
  std::vector<int> basis_;
};

template <>
bool DenseTableau<double>::TiedRatio(const double& a, const double& b) {
  return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b));
}
template <>
bool DenseTableau<mpq_class>::TiedRatio(const mpq_class&, const mpq_class&) {
  return false;
}
template <>
void DenseTableau<double>::Clean(int r) {
  for (int j = 0; j <= cols_; ++j) {
    if (std::abs(at(r, j)) < 1e-13) at(r, j) = 0.0;
  }
}
template <>
void DenseTableau<mpq_class>::Clean(int) {}

// Solves B X = M for the final basis with partial pivoting. Returns false if
// B is numerically singular.
bool Refactor(const std::vector<std::vector<double>>& rows_m,
              const std::vector<double>& rhs_m, const std::vector<int>& basis,
              int num_cols, std::vector<std::vector<double>>* out_matrix,
              std::vector<double>* out_rhs) {
  const int m = static_cast<int>(basis.size());
  // Augmented [B | M | b], B stored column-wise per basis entry.
  const int width = m + num_cols + 1;
  std::vector<double> w(std::size_t(m) * width);
  auto cell = [&](int r, int c) -> double& {
    return w[std::size_t(r) * width + c];
  };
  for (int r = 0; r < m; ++r) {
    for (int i = 0; i < m; ++i) cell(r, i) = rows_m[r][basis[i]];
    for (int j = 0; j < num_cols; ++j) cell(r, m + j) = rows_m[r][j];
    cell(r, m + num_cols) = rhs_m[r];
  }
  for (int col = 0; col < m; ++col) {
    int piv = col;
    for (int r = col + 1; r < m; ++r) {
      if (std::abs(cell(r, col)) > std::abs(cell(piv, col))) piv = r;
    }
    if (std::abs(cell(piv, col)) < 1e-11) return false;
    if (piv != col) {
      for (int c = 0; c < width; ++c) std::swap(cell(piv, c), cell(col, c));
    }
    const double inv = 1.0 / cell(col, col);
    for (int c = col; c < width; ++c) cell(col, c) *= inv;
    for (int r = 0; r < m; ++r) {
      if (r == col) continue;
      const double f = cell(r, col);
      if (f == 0.0) continue;
      for (int c = col; c < width; ++c) cell(r, c) -= f * cell(col, c);
    }
  }
  out_matrix->assign(m, std::vector<double>(num_cols));
  out_rhs->assign(m, 0.0);
  for (int r = 0; r < m; ++r) {
    for (int j = 0; j < num_cols; ++j) {
      double v = cell(r, m + j);
      if (std::abs(v) < 1e-12) v = 0.0;
      (*out_matrix)[r][j] = v;
    }
    for (int i = 0; i < m; ++i) (*out_matrix)[r][basis[i]] = r == i ? 1.0 : 0.0;
    (*out_rhs)[r] = cell(r, m + num_cols);
  }
  return true;
}

template <typename T>
LpSolution SolveImpl(const StandardForm& sf, std::span<const double> objective,
                     const SimplexOptions& opt) {
  const int m = sf.num_rows();
  const int nc = sf.num_cols;
  LpSolution sol;

  // Rows with negative rhs are negated; their slack then cannot start basic.
  std::vector<bool> negated(m, false);
  std::vector<int> art_row;
  for (int r = 0; r < m; ++r) {
    negated[r] = sf.rhs[r] < 0.0;
    if (negated[r] || sf.slack_of_row[r] < 0) art_row.push_back(r);
  }
  const int na = static_cast<int>(art_row.size());
  const int limit = 50 * (m + nc + na);
  const int degenerate_limit = 5 * (m + nc + na);

  DenseTableau<T> tab(m, nc + na);
  for (int r = 0; r < m; ++r) {
    const double sign = negated[r] ? -1.0 : 1.0;
    for (int j = 0; j < nc; ++j) {
      const double v = sf.aug_matrix[r][j];
      if (v != 0.0) tab.at(r, j) = Num<T>::From(sign * v);
    }
    tab.rhs(r) = Num<T>::From(sign * sf.rhs[r]);
    if (!negated[r] && sf.slack_of_row[r] >= 0) {
      tab.basis()[r] = sf.slack_of_row[r];
    }
  }
  for (int a = 0; a < na; ++a) {
    tab.at(art_row[a], nc + a) = T(1);
    tab.basis()[art_row[a]] = nc + a;
  }

  std::vector<bool> redundant(m, false);
  if (na > 0) {
    std::vector<T> phase1(nc + na, T(0));
    for (int a = 0; a < na; ++a) phase1[nc + a] = T(1);
    tab.PriceOut(phase1);
    tab.Run(nc + na, opt, &sol.pivots, limit, degenerate_limit);
    // cost(-z) holds minus the phase-1 objective.
    const double infeas = -Num<T>::ToDouble(tab.cost(nc + na));
    if (infeas > opt.feasibility_tol) {
      sol.status = LpStatus::kInfeasible;
      return sol;
    }
    for (int r = 0; r < m; ++r) {
      if (tab.basis()[r] < nc) continue;
      int q = -1;
      for (int j = 0; j < nc; ++j) {
        if (!Num<T>::Zero(tab.at(r, j), opt.pivot_tol) &&
            (q < 0 || Num<T>::Abs(tab.at(r, j)) > Num<T>::Abs(tab.at(r, q)))) {
          q = j;
        }
      }
      if (q < 0) {
        redundant[r] = true;
      } else {
        tab.Pivot(r, q);
      }
    }
  }

  // Drop artificial columns and redundant rows.
  std::vector<int> keep;
  for (int r = 0; r < m; ++r) {
    if (!redundant[r]) keep.push_back(r);
  }
  const int mk = static_cast<int>(keep.size());
  DenseTableau<T> t2(mk, nc);
  for (int i = 0; i < mk; ++i) {
    for (int j = 0; j < nc; ++j) t2.at(i, j) = tab.at(keep[i], j);
    t2.rhs(i) = tab.rhs(keep[i]);
    t2.basis()[i] = tab.basis()[keep[i]];
  }
  std::vector<T> cost(nc, T(0));
  for (int j = 0; j < sf.num_vars; ++j) cost[j] = Num<T>::From(objective[j]);
  t2.PriceOut(cost);
  if (t2.Run(nc, opt, &sol.pivots, limit, degenerate_limit) ==
      RunResult::kUnbounded) {
    sol.status = LpStatus::kUnbounded;
    return sol;
  }

  sol.status = LpStatus::kOptimal;
  SimplexTableau out;
  out.basis = t2.basis();
  out.matrix.assign(mk, std::vector<double>(nc));
  out.rhs_v.resize(mk);
  out.objective_row.resize(nc);
  for (int i = 0; i < mk; ++i) {
    for (int j = 0; j < nc; ++j) out.matrix[i][j] = Num<T>::ToDouble(t2.at(i, j));
    out.rhs_v[i] = Num<T>::ToDouble(t2.rhs(i));
  }
  for (int j = 0; j < nc; ++j) out.objective_row[j] = Num<T>::ToDouble(t2.cost(j));

  if constexpr (std::is_same_v<T, double>) {
    std::vector<std::vector<double>> rows_m;
    std::vector<double> rhs_m;
    for (int r : keep) {
      rows_m.push_back(sf.aug_matrix[r]);
      rhs_m.push_back(sf.rhs[r]);
    }
    std::vector<std::vector<double>> fresh;
    std::vector<double> fresh_rhs;
    if (Refactor(rows_m, rhs_m, out.basis, nc, &fresh, &fresh_rhs) &&
        std::all_of(fresh_rhs.begin(), fresh_rhs.end(), [&](double v) {
          return v >= -opt.feasibility_tol;
        })) {
      for (double& v : fresh_rhs) {
        if (v < 0.0) v = 0.0;
      }
      out.matrix = std::move(fresh);
      out.rhs_v = std::move(fresh_rhs);
      for (int j = 0; j < nc; ++j) {
        double d = cost[j];
        for (int i = 0; i < mk; ++i) d -= cost[out.basis[i]] * out.matrix[i][j];
        out.objective_row[j] = std::abs(d) < 1e-12 ? 0.0 : d;
      }
    }
  } else {
    auto exact = std::make_shared<RationalTableau>();
    exact->basis = t2.basis();
    exact->matrix.assign(mk, std::vector<mpq_class>(nc));
    exact->rhs_v.resize(mk);
    for (int i = 0; i < mk; ++i) {
      for (int j = 0; j < nc; ++j) exact->matrix[i][j] = t2.at(i, j);
      exact->rhs_v[i] = t2.rhs(i);
    }
    sol.exact_tableau = std::move(exact);
  }

  sol.x.assign(sf.num_vars, 0.0);
  for (int i = 0; i < mk; ++i) {
    if (out.basis[i] < sf.num_vars) sol.x[out.basis[i]] = out.rhs_v[i];
  }
  if constexpr (std::is_same_v<T, double>) {
    sol.value = Dot(objective, sol.x);
  } else {
    mpq_class value = 0;
    for (int i = 0; i < mk; ++i) {
      if (t2.basis()[i] < sf.num_vars) {
        value += mpq_class(objective[t2.basis()[i]]) * t2.rhs(i);
      }
    }
    sol.value = value.get_d();
  }
  sol.tableau = std::move(out);
  return sol;
}

}  // namespace

LpSolution SolveSimplex(const StandardForm& sf, std::span<const double> objective,
                        const SimplexOptions& options) {
  if (options.arithmetic == Arithmetic::kRational) {
    return SolveImpl<mpq_class>(sf, objective, options);
  }
  return SolveImpl<double>(sf, objective, options);
}

double MaxRelativeRowViolation(const LinearProgram& lp, std::span<const double> x) {
  double worst = 0.0;
  for (const Row& row : lp.rows) {
    double lhs = 0.0, scale = std::max(1.0, std::abs(row.rhs));
    double mass = 0.0;
    for (std::size_t j = 0; j < row.coeffs.size() && j < x.size(); ++j) {
      lhs += row.coeffs[j] * x[j];
      mass += std::abs(row.coeffs[j] * x[j]);
    }
    scale = std::max(scale, mass);
    double v = 0.0;
    switch (row.sense) {
      case Sense::kLe: v = lhs - row.rhs; break;
      case Sense::kGe: v = row.rhs - lhs; break;
      case Sense::kEq: v = std::abs(lhs - row.rhs); break;
    }
    worst = std::max(worst, v / scale);
  }
  for (double v : x) worst = std::max(worst, -v);
  return worst;
}

LpSolution SolveVerified(const StandardForm& sf, const LinearProgram& lp,
                         const SimplexOptions& options) {
  LpSolution sol = SolveSimplex(sf, lp.objective, options);
  if (options.arithmetic == Arithmetic::kFloat && sol.status == LpStatus::kOptimal) {
    const double viol = MaxRelativeRowViolation(lp, sol.x);
    if (viol > 1e-6) {
      LOG(WARNING) << "float optimum violates a row by " << viol
                   << " (relative); solving exactly";
      SimplexOptions exact = options;
      exact.arithmetic = Arithmetic::kRational;
      return SolveSimplex(sf, lp.objective, exact);
    }
  }
  return sol;
}

LpSolution SolveLp(const LinearProgram& lp, const SimplexOptions& options) {
  return SolveVerified(ToStandardForm(lp), lp, options);
}

bool IsIntegral(std::span<const double> x, double tol) {
  return std::all_of(x.begin(), x.end(), [tol](double v) {
    return std::abs(v - std::round(v)) <= tol;
  });
}

double Dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

}  // namespace cutremoval
