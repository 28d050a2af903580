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

// The two cutting-plane loops. Add-only: solve base + P_k, stop if integral,
// add one cut of the Gomory pool. Removal: generate the pool for base + P_k,
// solve with the whole pool, stop if integral, keep the k+1 best of P_k and
// the pool, then add the bound cut c^T x >= ceil(value).

#ifndef CUTREMOVAL_ENGINE_H_
#define CUTREMOVAL_ENGINE_H_

#include <cstdint>
#include <string>
#include <vector>

#include "cutremoval/gomory.h"
#include "cutremoval/lp_core.h"
#include "cutremoval/policies.h"

namespace cutremoval {

enum class RunMode { kAddOnly, kRemoval };
enum class TerminalStatus { kIntegralFound, kIterLimit, kNumericalFailure };

const char* ToString(RunMode mode);
const char* ToString(TerminalStatus status);

struct RunConfig {
  int max_iters = 30;
  double integrality_tol = 1e-6;
  Arithmetic arithmetic = Arithmetic::kFloat;
  uint64_t seed = 0;
  // Store P_k and C_k in every record (needed for replay and datasets).
  bool record_cuts = false;
  // Store look-ahead LP values of every pool cut, even when the policy does
  // not need them (add-only mode).
  bool record_pool_scores = false;
  GomoryOptions gomory;
};

struct IterationRecord {
  int iter = 0;
  // LP value of base + P_k.
  double lp_value = 0.0;
  // Removal mode: LP value of base + P_k + C_k. Equal to lp_value otherwise.
  double pooled_value = 0.0;
  int pool_size = 0;
  int num_active = 0;
  int lp_rows = 0;
  std::vector<int64_t> selected_ids;
  std::vector<int64_t> removed_ids;
  // Optimum of the LP whose integrality decides termination.
  std::vector<double> x_star;
  // Filled when RunConfig::record_cuts is set.
  std::vector<Cut> active_cuts;
  std::vector<Cut> pool;
  // Add-only: per pool cut, LP value of base + P_k + cut (look-ahead policy
  // or record_pool_scores). Removal: per candidate (P_k then pool) score.
  std::vector<double> scores;
};

struct Trajectory {
  std::string instance_id;
  std::string policy_id;
  RunMode mode = RunMode::kAddOnly;
  TerminalStatus status = TerminalStatus::kIterLimit;
  std::string failure;
  int max_iters = 0;
  std::vector<IterationRecord> records;
  // Value of the last LP solved whose optimum the loop would return.
  double final_value = 0.0;
};

Trajectory RunAddOnly(const LinearProgram& lp, const AdditionPolicy& policy,
                      const RunConfig& cfg, std::string instance_id = "");

Trajectory RunRemoval(const LinearProgram& lp, const CutScorer& scorer,
                      const RunConfig& cfg, std::string instance_id = "");

// ceil(v) after snapping values within 1e-6 of an integer to it.
double SnapCeil(double v, double tol = 1e-6);

// The bound cut -c^T x <= -ceil(value); with fractional c the ceiling is
// skipped.
Cut BoundCut(const LinearProgram& lp, double value, int64_t id, int born_iter);

// Bound sequence measured by the integrality gap closure: the per-record
// lp_value, followed in removal mode by the final pooled value.
std::vector<double> BoundSequence(const Trajectory& traj);

// (v_k - v_1) / (z_int - v_1) over BoundSequence, clamped to [0, 1]; all ones
// when the gap is zero.
std::vector<double> ComputeIgc(const Trajectory& traj, double z_int);
std::vector<double> ComputeIgc(const std::vector<double>& values, double z_int);

inline constexpr int kTrajectoryFormatVersion = 1;

std::string SerializeTrajectory(const Trajectory& traj);
Trajectory ParseTrajectory(const std::string& text);
void SaveTrajectory(const Trajectory& traj, const std::string& path);
Trajectory LoadTrajectory(const std::string& path);

}  // namespace cutremoval

#endif  // CUTREMOVAL_ENGINE_H_
