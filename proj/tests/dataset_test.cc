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
#include <filesystem>

#include "cutremoval/instances.h"
#include "gtest/gtest.h"

namespace cutremoval {
namespace {

Instance SmallPacking(uint64_t seed) {
  InstanceSpec spec = PresetSpec(Family::kPacking, "small");
  spec.seed = seed;
  return Generate(spec, "packing-" + std::to_string(seed));
}

Trajectory Collect(const Instance& inst, int iters) {
  return RunAddOnly(inst.lp, {.kind = AdditionKind::kLookAhead},
                    {.max_iters = iters, .record_cuts = true}, inst.id);
}

TEST(NormalizedImprovementTest, Examples) {
  EXPECT_EQ(NormalizedImprovement(-10, -10), 0.0);
  EXPECT_DOUBLE_EQ(NormalizedImprovement(-8, -10), 0.2);
  EXPECT_DOUBLE_EQ(NormalizedImprovement(1, 0), 1e6);
}

TEST(BuildDatasetTest, OneSamplePerCandidateWithLookaheadTargets) {
  const Instance inst = SmallPacking(1);
  const Trajectory t = Collect(inst, 6);
  const auto samples = BuildDataset(t, inst.lp, "packing");
  std::size_t expected = 0;
  for (const IterationRecord& r : t.records) {
    if (!r.pool.empty()) expected += r.pool.size() + r.active_cuts.size();
  }
  ASSERT_EQ(samples.size(), expected);
  std::size_t at = 0;
  for (const IterationRecord& r : t.records) {
    if (r.pool.empty()) continue;
    CutPlaneState s;
    s.base = &inst.lp;
    s.active_cuts = r.active_cuts;
    const std::vector<double> recomputed = LookaheadAddScores(r.pool, s);
    for (std::size_t i = 0; i < r.active_cuts.size(); ++i, ++at) {
      EXPECT_EQ(samples[at].target, 0.0);
      EXPECT_EQ(samples[at].features[13], 0.0);
    }
    for (std::size_t i = 0; i < r.pool.size(); ++i, ++at) {
      EXPECT_NEAR(samples[at].target, NormalizedImprovement(recomputed[i], r.lp_value), 1e-6);
      EXPECT_GE(samples[at].target, -1e-7);
      EXPECT_EQ(samples[at].features[13], 1.0);
      EXPECT_EQ(samples[at].iteration, r.iter);
      EXPECT_EQ(samples[at].cut_id, r.pool[i].id);
    }
  }
}

TEST(BuildDatasetTest, TamperedValueIsReplayMismatch) {
  const Instance inst = SmallPacking(2);
  Trajectory t = Collect(inst, 3);
  ASSERT_FALSE(t.records.empty());
  t.records[0].lp_value += 1e-3;
  EXPECT_THROW(BuildDataset(t, inst.lp, "packing"), ReplayMismatch);
}

TEST(DatasetCsvTest, RoundTripIsExact) {
  const Instance inst = SmallPacking(3);
  const auto samples = BuildDataset(Collect(inst, 4), inst.lp, "packing");
  ASSERT_FALSE(samples.empty());
  const std::string path =
      (std::filesystem::temp_directory_path() / "cutremoval_dataset.csv").string();
  WriteDatasetCsv(samples, "config_hash=0 seed=3", path);
  const auto back = ReadDatasetCsv(path);
  ASSERT_EQ(back.size(), samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    EXPECT_EQ(back[i].features, samples[i].features);
    EXPECT_EQ(back[i].target, samples[i].target);
    EXPECT_EQ(back[i].instance_id, samples[i].instance_id);
    EXPECT_EQ(back[i].cut_id, samples[i].cut_id);
  }
  std::remove(path.c_str());
}

}  // namespace
}  // namespace cutremoval
