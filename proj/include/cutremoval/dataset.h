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

// Training samples from look-ahead trajectories: every cut of P_k and C_k,
// encoded at the pooled optimum, labelled with the normalized LP improvement
// of adding it to base + P_k.

#ifndef CUTREMOVAL_DATASET_H_
#define CUTREMOVAL_DATASET_H_

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cutremoval/engine.h"
#include "cutremoval/model.h"

namespace cutremoval {

class ReplayMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DatasetOptions {
  // Targets divide by max(|c^T x*_k|, denominator_floor).
  double denominator_floor = 1e-6;
  double replay_tol = 1e-5;
  SimplexOptions lp;
};

// (value_with_cut - value) / max(|value|, floor).
double NormalizedImprovement(double value_with_cut, double value, double floor = 1e-6);

// Needs a trajectory recorded with cuts and look-ahead pool scores. Throws
// ReplayMismatch when base + P_k no longer solves to the recorded value.
std::vector<TrainSample> BuildDataset(const Trajectory& traj, const LinearProgram& lp,
                                      const std::string& family,
                                      const DatasetOptions& options = {});

// Columns: the 14 features in order, target, family, instance_id, iteration,
// cut_id. `metadata` becomes a leading "# " comment line.
void WriteDatasetCsv(std::span<const TrainSample> samples, const std::string& metadata,
                     const std::string& path);
std::vector<TrainSample> ReadDatasetCsv(const std::string& path);

}  // namespace cutremoval

#endif  // CUTREMOVAL_DATASET_H_
