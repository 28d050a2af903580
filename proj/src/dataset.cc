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

#include "cutremoval/dataset.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "cutremoval/features.h"
#include "cutremoval/policies.h"

namespace cutremoval {
namespace {

std::string Num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

double NormalizedImprovement(double value_with_cut, double value, double floor) {
  return (value_with_cut - value) / std::max(std::abs(value), floor);
}

std::vector<TrainSample> BuildDataset(const Trajectory& traj, const LinearProgram& lp,
                                      const std::string& family,
                                      const DatasetOptions& options) {
  std::vector<TrainSample> samples;
  for (const IterationRecord& rec : traj.records) {
    if (rec.pool.empty() || rec.scores.size() != rec.pool.size()) continue;
    const LpSolution replay = SolveLp(WithCuts(lp, rec.active_cuts), options.lp);
    if (replay.status != LpStatus::kOptimal ||
        std::abs(replay.value - rec.lp_value) > options.replay_tol) {
      throw ReplayMismatch("instance " + traj.instance_id + " iteration " +
                           std::to_string(rec.iter) + ": recorded " +
                           std::to_string(rec.lp_value) + ", replayed " +
                           std::to_string(replay.value));
    }
    CutPlaneState state;
    state.base = &lp;
    state.active_cuts = rec.active_cuts;
    state.pool.cuts = rec.pool;
    state.pool.source_iter = rec.iter;
    state.iter = rec.iter;
    state.lp_options = options.lp;
    const auto pooled = PooledState(state);
    if (!pooled) continue;

    auto add = [&](const Cut& cut, double target) {
      TrainSample s;
      s.features = Encode(cut, *pooled);
      s.target = target;
      s.family = family;
      s.instance_id = traj.instance_id;
      s.iteration = rec.iter;
      s.cut_id = cut.id;
      samples.push_back(std::move(s));
    };
    // Already active: adding it again changes nothing.
    for (const Cut& cut : rec.active_cuts) add(cut, 0.0);
    for (std::size_t i = 0; i < rec.pool.size(); ++i) {
      if (!std::isfinite(rec.scores[i])) continue;
      add(rec.pool[i],
          NormalizedImprovement(rec.scores[i], rec.lp_value, options.denominator_floor));
    }
  }
  return samples;
}

void WriteDatasetCsv(std::span<const TrainSample> samples, const std::string& metadata,
                     const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "# " << metadata << "\n";
  for (std::string_view name : FeatureNames()) out << name << ",";
  out << "target,family,instance_id,iteration,cut_id\n";
  for (const TrainSample& s : samples) {
    for (double f : s.features) out << Num(f) << ",";
    out << Num(s.target) << "," << s.family << "," << s.instance_id << "," << s.iteration
        << "," << s.cut_id << "\n";
  }
}

std::vector<TrainSample> ReadDatasetCsv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::vector<TrainSample> samples;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    std::stringstream ss(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != kNumFeatures + 5) {
      throw std::runtime_error("bad dataset row in " + path + ": " + line);
    }
    TrainSample s;
    for (int i = 0; i < kNumFeatures; ++i) s.features[i] = std::stod(cells[i]);
    s.target = std::stod(cells[kNumFeatures]);
    s.family = cells[kNumFeatures + 1];
    s.instance_id = cells[kNumFeatures + 2];
    s.iteration = std::stoi(cells[kNumFeatures + 3]);
    s.cut_id = std::stoll(cells[kNumFeatures + 4]);
    samples.push_back(std::move(s));
  }
  return samples;
}

}  // namespace cutremoval
