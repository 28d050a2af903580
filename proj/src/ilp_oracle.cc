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

#include "cutremoval/ilp_oracle.h"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include <glog/logging.h>

namespace cutremoval {

const char* ToString(IlpStatus status) {
  switch (status) {
    case IlpStatus::kOptimal:
      return "Optimal";
    case IlpStatus::kInfeasible:
      return "Infeasible";
    case IlpStatus::kNodeLimit:
      return "NodeLimit";
  }
  return "?";
}

bool IsFeasiblePoint(const LinearProgram& lp, std::span<const int64_t> x) {
  const bool integral = lp.IsIntegral();
  for (const Row& row : lp.rows) {
    if (integral) {
      __int128 s = 0;
      for (int j = 0; j < lp.num_vars; ++j) {
        s += static_cast<__int128>(static_cast<int64_t>(row.coeffs[j])) * x[j];
      }
      const auto b = static_cast<__int128>(static_cast<int64_t>(row.rhs));
      if (row.sense == Sense::kLe && s > b) return false;
      if (row.sense == Sense::kGe && s < b) return false;
      if (row.sense == Sense::kEq && s != b) return false;
    } else {
      long double s = 0;
      for (int j = 0; j < lp.num_vars; ++j) {
        s += static_cast<long double>(row.coeffs[j]) * x[j];
      }
      const long double tol = 1e-9L * std::max<long double>(1, std::fabs(row.rhs));
      if (row.sense == Sense::kLe && s > row.rhs + tol) return false;
      if (row.sense == Sense::kGe && s < row.rhs - tol) return false;
      if (row.sense == Sense::kEq && std::fabs(s - row.rhs) > tol) return false;
    }
  }
  return std::all_of(x.begin(), x.end(), [](int64_t v) { return v >= 0; });
}

double ObjectiveValue(const LinearProgram& lp, std::span<const int64_t> x) {
  double v = 0.0;
  for (int j = 0; j < lp.num_vars; ++j) v += lp.objective[j] * double(x[j]);
  return v;
}

namespace {

struct Node {
  double bound = 0.0;
  int64_t id = 0;
  std::vector<int64_t> lo;
  std::vector<int64_t> hi;  // -1 when unbounded above
  std::vector<double> x;
};

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    return a.id > b.id;
  }
};

LinearProgram NodeLp(const LinearProgram& base, const Node& node) {
  LinearProgram lp = base;
  for (int j = 0; j < base.num_vars; ++j) {
    if (node.lo[j] > 0) {
      std::vector<double> row(base.num_vars, 0.0);
      row[j] = 1.0;
      lp.AddRow(std::move(row), Sense::kGe, double(node.lo[j]));
    }
    if (node.hi[j] >= 0) {
      std::vector<double> row(base.num_vars, 0.0);
      row[j] = 1.0;
      lp.AddRow(std::move(row), Sense::kLe, double(node.hi[j]));
    }
  }
  return lp;
}

}  // namespace

IlpResult SolveIlp(const LinearProgram& lp, const IlpOptions& options) {
  const int n = lp.num_vars;
  const bool integral_objective = std::all_of(
      lp.objective.begin(), lp.objective.end(),
      [](double c) { return c == std::floor(c); });
  IlpResult result;
  double incumbent = std::numeric_limits<double>::infinity();

  // Can a node with LP bound `bound` still beat the incumbent?
  auto promising = [&](double bound) {
    if (!std::isfinite(incumbent)) return true;
    if (integral_objective) return std::ceil(bound - 1e-6) < incumbent;
    return bound < incumbent - 1e-9;
  };

  int64_t next_id = 0;
  std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
  auto evaluate = [&](Node node) {
    ++result.nodes_explored;
    const LpSolution sol = SolveLp(NodeLp(lp, node), options.lp);
    if (sol.status == LpStatus::kUnbounded) {
      throw std::runtime_error("branch-and-bound node LP is unbounded");
    }
    if (sol.status != LpStatus::kOptimal || !promising(sol.value)) return;
    // Cheap primal heuristic: round the node LP point down and to nearest,
    // clamped to the node box. On packing-type rows flooring always works.
    for (const bool nearest : {false, true}) {
      IntPoint point(n);
      for (int j = 0; j < n; ++j) {
        int64_t v = nearest ? std::llround(sol.x[j])
                            : static_cast<int64_t>(std::floor(sol.x[j] + 1e-9));
        v = std::max(v, node.lo[j]);
        if (node.hi[j] >= 0) v = std::min(v, node.hi[j]);
        point[j] = v;
      }
      if (!IsFeasiblePoint(lp, point)) continue;
      const double value = ObjectiveValue(lp, point);
      if (value < incumbent) {
        incumbent = value;
        result.x_int = std::move(point);
      }
    }
    if (!promising(sol.value)) return;
    node.bound = sol.value;
    node.x = sol.x;
    node.id = next_id++;
    open.push(std::move(node));
  };

  Node root;
  root.lo.assign(n, 0);
  root.hi.assign(n, -1);
  for (std::size_t j = 0; j < options.var_upper_bounds.size() && int(j) < n; ++j) {
    root.hi[j] = options.var_upper_bounds[j];
  }
  evaluate(std::move(root));

  while (!open.empty()) {
    Node node = open.top();
    open.pop();
    if (!promising(node.bound)) continue;

    // Most fractional variable.
    int branch = -1;
    double best = options.integrality_tol;
    for (int j = 0; j < n; ++j) {
      const double f = std::abs(node.x[j] - std::round(node.x[j]));
      if (f > best) {
        best = f;
        branch = j;
      }
    }
    if (branch < 0) {
      IntPoint point(n);
      for (int j = 0; j < n; ++j) point[j] = std::llround(node.x[j]);
      if (IsFeasiblePoint(lp, point)) {
        const double value = ObjectiveValue(lp, point);
        if (value < incumbent) {
          incumbent = value;
          result.x_int = std::move(point);
        }
        continue;
      }
      // Rounding broke a row: branch on the largest residual fraction.
      double worst = -1.0;
      for (int j = 0; j < n; ++j) {
        const double f = std::abs(node.x[j] - std::round(node.x[j]));
        if (f > worst && f > 0.0) {
          worst = f;
          branch = j;
        }
      }
      if (branch < 0) {
        LOG(WARNING) << "integral LP point fails exact feasibility; node dropped";
        continue;
      }
    }
    if (result.nodes_explored >= options.node_limit) {
      result.status = IlpStatus::kNodeLimit;
      result.value = incumbent;
      result.proven = false;
      return result;
    }
    const double v = node.x[branch];
    Node down = node;
    down.hi[branch] = static_cast<int64_t>(std::floor(v));
    Node up = std::move(node);
    up.lo[branch] = static_cast<int64_t>(std::floor(v)) + 1;
    if (down.hi[branch] >= down.lo[branch]) evaluate(std::move(down));
    if (up.hi[branch] < 0 || up.lo[branch] <= up.hi[branch]) evaluate(std::move(up));
  }

  if (result.x_int.empty()) {
    result.status = IlpStatus::kInfeasible;
  } else {
    result.status = IlpStatus::kOptimal;
    result.value = incumbent;
  }
  result.proven = true;
  return result;
}

std::vector<IntPoint> EnumerateIntegerPoints(const LinearProgram& lp,
                                             std::span<const int64_t> bounds,
                                             int64_t node_budget) {
  const int n = lp.num_vars;
  const int m = lp.num_rows();
  // rest_min[r][j], rest_max[r][j]: extreme contributions of variables j..n-1.
  std::vector<std::vector<double>> rest_min(m, std::vector<double>(n + 1, 0.0));
  std::vector<std::vector<double>> rest_max(m, std::vector<double>(n + 1, 0.0));
  for (int r = 0; r < m; ++r) {
    for (int j = n - 1; j >= 0; --j) {
      const double t = lp.rows[r].coeffs[j] * double(bounds[j]);
      rest_min[r][j] = rest_min[r][j + 1] + std::min(0.0, t);
      rest_max[r][j] = rest_max[r][j + 1] + std::max(0.0, t);
    }
  }
  constexpr double kTol = 1e-9;
  std::vector<IntPoint> points;
  IntPoint x(n, 0);
  std::vector<double> partial(m, 0.0);
  int64_t nodes = 0;

  std::function<void(int)> dfs = [&](int j) {
    if (++nodes > node_budget) {
      throw TooLarge("integer enumeration exceeded " +
                     std::to_string(node_budget) + " nodes");
    }
    for (int r = 0; r < m; ++r) {
      const Row& row = lp.rows[r];
      const double lo = partial[r] + rest_min[r][j];
      const double hi = partial[r] + rest_max[r][j];
      if (row.sense != Sense::kGe && lo > row.rhs + kTol) return;
      if (row.sense != Sense::kLe && hi < row.rhs - kTol) return;
    }
    if (j == n) {
      points.push_back(x);
      return;
    }
    for (int64_t v = 0; v <= bounds[j]; ++v) {
      x[j] = v;
      for (int r = 0; r < m; ++r) partial[r] += lp.rows[r].coeffs[j] * double(v);
      dfs(j + 1);
      for (int r = 0; r < m; ++r) partial[r] -= lp.rows[r].coeffs[j] * double(v);
    }
    x[j] = 0;
  };
  dfs(0);
  return points;
}

std::vector<int64_t> InferUpperBounds(const LinearProgram& lp) {
  std::vector<int64_t> bounds(lp.num_vars, 0);
  LinearProgram probe = lp;
  for (int j = 0; j < lp.num_vars; ++j) {
    std::fill(probe.objective.begin(), probe.objective.end(), 0.0);
    probe.objective[j] = -1.0;
    const LpSolution sol = SolveLp(probe);
    if (sol.status != LpStatus::kOptimal) {
      throw std::runtime_error(std::string("cannot bound variable ") +
                               std::to_string(j) + ": " + ToString(sol.status));
    }
    bounds[j] = static_cast<int64_t>(std::floor(-sol.value + 1e-6));
  }
  return bounds;
}

}  // namespace cutremoval
