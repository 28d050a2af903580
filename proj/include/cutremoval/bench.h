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

// Experiment pipeline behind the command-line tool: instance generation,
// integer-optimum caching, trajectory collection, training, IGC curves and
// cutpool distribution matrices.
//
// Layout under `out`:
//   <family>/instances/<split>/<id>.json
//   <family>/oracle_<split>.json
//   <family>/trajectories/<split>/<id>.json
//   <family>/dataset_{train,val}.csv, <family>/train_report.csv
//   <family>/model.json            (unless `model` names another path)
//   igc_<family>.csv, dist_<family>_<metric>_<policy>.csv

#ifndef CUTREMOVAL_BENCH_H_
#define CUTREMOVAL_BENCH_H_

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "cutremoval/engine.h"
#include "cutremoval/instances.h"
#include "cutremoval/model.h"
#include "cutremoval/policies.h"

namespace cutremoval {

inline constexpr char kCodeVersion[] = "cutremoval-0.1.0";

struct ExperimentConfig {
  std::vector<Family> families = {Family::kPacking};
  std::string preset = "train";
  // Instances per split.
  int train_count = 2000;
  int val_count = 500;
  int count = 500;  // test split
  // Splits a command works on; empty means the command's default.
  std::vector<std::string> splits;
  uint64_t seed = 0;
  // Empty means the command's default.
  std::vector<PolicyChoice> policies;
  int max_iters = 30;
  std::string model;  // empty: <out>/<family>/model.json
  std::string out = "out";
  // Instance file or directory used instead of the generated splits.
  std::string input;
  int workers = 1;
  Arithmetic arith = Arithmetic::kFloat;
  TrainHyperparams train;
  int bins = 10;
  int64_t oracle_node_limit = 1'000'000;
};

// Sorted key=value lines of every setting that can change an output file.
// The output directory, worker count and input path are left out.
std::string CanonicalConfig(const ExperimentConfig& cfg);
// 64-bit FNV-1a, as 16 hex digits.
std::string HashHex(const std::string& text);
// "<version> command=<cmd> config_hash=<h> seed=<s> <extra>"; writers put it
// on a leading "# " comment line.
std::string MetadataLine(const ExperimentConfig& cfg, const std::string& command,
                         const std::string& extra = "");

// Runs fn(0..n-1) on up to `workers` threads. An exception thrown by fn(i)
// is logged and recorded in the returned vector (empty string on success).
std::vector<std::string> ParallelFor(int n, int workers,
                                     const std::function<void(int)>& fn);

uint64_t MixSeed(uint64_t a, uint64_t b);

std::string FamilyDir(const ExperimentConfig& cfg, Family family);
std::string ModelPath(const ExperimentConfig& cfg, Family family);

// Instance i of a split, deterministic in (seed, family, preset, split, i).
Instance MakeSplitInstance(const ExperimentConfig& cfg, Family family,
                           const std::string& split, int index);
// Instances of `split` sorted by id, or those of cfg.input of this family.
std::vector<Instance> LoadInstances(const ExperimentConfig& cfg, Family family,
                                    const std::string& split);

struct OracleEntry {
  double z_int = 0.0;
  bool proven = false;
  int64_t nodes = 0;
  std::string status;
};
using OracleCache = std::map<std::string, OracleEntry>;

OracleEntry SolveOracle(const Instance& instance, int64_t node_limit);
void SaveOracleCache(const OracleCache& cache, const std::string& path);
OracleCache LoadOracleCache(const std::string& path);

// One cutting-plane run of `policy` on `instance`. Seeds derive from the
// instance draw seed, cfg.seed and the policy name.
Trajectory Rollout(const Instance& instance, const PolicyChoice& policy,
                   const ExperimentConfig& cfg,
                   std::shared_ptr<const MlpParams> model, bool record_cuts,
                   bool record_pool_scores);

// Pads with the last value (or truncates) to exactly `length` entries.
std::vector<double> CarryForward(const std::vector<double>& values, int length);

struct IgcCurve {
  std::string policy;
  std::vector<double> mean;
  std::vector<double> variance;  // population variance
  int instances = 0;
  // Instances whose run threw. A zero root gap counts as IGC 1 throughout.
  int excluded = 0;
};

IgcCurve AggregateIgc(const std::string& policy,
                      const std::vector<std::vector<double>>& curves, int length);

// Per-cut bound improvement metrics of one add-only record with look-ahead
// scores. M1: improvement / |lp value|. M2: improvement / largest
// improvement in the pool (all 0 when it is 0). Failed look-aheads are
// skipped; negative noise is clamped to 0.
std::vector<double> M1Values(const IterationRecord& record);
std::vector<double> M2Values(const IterationRecord& record);

struct DistributionMatrix {
  Family family = Family::kPacking;
  std::string policy;
  std::string metric;
  // rows[k] is iteration k + 1; up to the last iteration that had a pool.
  std::vector<std::vector<double>> rows;
  std::vector<int> pools;  // cutpools contributing to each row
};

// Each pool's metric values are sorted descending and read at the centers of
// `bins` equal slices of the normalized position [0, 1); row entries are the
// mean over contributing pools.
DistributionMatrix BuildDistribution(const std::vector<Trajectory>& trajs,
                                     const std::string& policy, bool m2, int bins);

struct EvalResult {
  Family family;
  std::vector<IgcCurve> curves;
};

struct TrainOutcome {
  Family family;
  TrainResult result;
  std::vector<TrainSample> val;
};

// Each command loops over cfg.families and returns what it wrote.
void CmdGen(const ExperimentConfig& cfg);
void CmdOracle(const ExperimentConfig& cfg);
void CmdCollect(const ExperimentConfig& cfg);
std::vector<TrainOutcome> CmdTrain(const ExperimentConfig& cfg);
std::vector<EvalResult> CmdEval(const ExperimentConfig& cfg);
std::vector<DistributionMatrix> CmdAnalyze(const ExperimentConfig& cfg);

void WriteIgcCsv(const std::vector<IgcCurve>& curves, const std::string& metadata,
                 const std::string& path);
void WriteDistributionCsv(const DistributionMatrix& matrix,
                          const std::string& metadata, const std::string& path);

}  // namespace cutremoval

#endif  // CUTREMOVAL_BENCH_H_
