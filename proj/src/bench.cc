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

#include "cutremoval/bench.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <utility>

#include <glog/logging.h>

#include "cutremoval/dataset.h"
#include "cutremoval/ilp_oracle.h"
#include "json.hpp"

namespace cutremoval {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string Num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string Join(const std::vector<std::string>& parts, const char* sep) {
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) s += sep;
    s += parts[i];
  }
  return s;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::ofstream OpenOut(const std::string& path) {
  fs::create_directories(fs::path(path).parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

void ResetDir(const fs::path& dir) {
  fs::remove_all(dir);
  fs::create_directories(dir);
}

std::vector<std::string> SplitsOr(const ExperimentConfig& cfg,
                                  std::vector<std::string> fallback) {
  return cfg.splits.empty() ? fallback : cfg.splits;
}

int SplitCount(const ExperimentConfig& cfg, const std::string& split) {
  if (split == "train") return cfg.train_count;
  if (split == "val") return cfg.val_count;
  if (split == "test") return cfg.count;
  throw std::invalid_argument("unknown split '" + split + "'");
}

uint64_t SplitIndex(const std::string& split) {
  if (split == "train") return 0;
  if (split == "val") return 1;
  if (split == "test") return 2;
  throw std::invalid_argument("unknown split '" + split + "'");
}

std::vector<std::string> PolicyNames(const std::vector<PolicyChoice>& policies) {
  std::vector<std::string> names;
  for (const PolicyChoice& p : policies) names.push_back(p.name());
  return names;
}

class PhaseTimer {
 public:
  explicit PhaseTimer(std::string name)
      : name_(std::move(name)), start_(std::chrono::steady_clock::now()) {}
  ~PhaseTimer() {
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                                   start_).count();
    LOG(INFO) << name_ << " took " << s << " s";
  }

 private:
  std::string name_;
  std::chrono::steady_clock::time_point start_;
};

std::shared_ptr<const MlpParams> LoadModelIfNeeded(
    const ExperimentConfig& cfg, Family family,
    const std::vector<PolicyChoice>& policies) {
  const bool needed = std::any_of(policies.begin(), policies.end(),
                                  [](const PolicyChoice& p) { return p.needs_model(); });
  if (!needed) return nullptr;
  const std::string path = ModelPath(cfg, family);
  if (!fs::exists(path)) {
    throw MissingModel("neural policy needs a model; " + path + " does not exist");
  }
  return std::make_shared<const MlpParams>(LoadModel(path));
}

std::string TrajectoryPath(const ExperimentConfig& cfg, Family family,
                           const std::string& split, const std::string& id) {
  return FamilyDir(cfg, family) + "/trajectories/" + split + "/" + id + ".json";
}

}  // namespace

std::string CanonicalConfig(const ExperimentConfig& cfg) {
  std::vector<std::string> families;
  for (Family f : cfg.families) families.push_back(ToString(f));
  std::vector<std::string> hidden;
  for (int h : cfg.train.hidden) hidden.push_back(std::to_string(h));
  std::map<std::string, std::string> kv = {
      {"arith", cfg.arith == Arithmetic::kRational ? "rational" : "float"},
      {"batch", std::to_string(cfg.train.batch_size)},
      {"bins", std::to_string(cfg.bins)},
      {"count", std::to_string(cfg.count)},
      {"epochs", std::to_string(cfg.train.epochs)},
      {"family", Join(families, ",")},
      {"hidden", Join(hidden, ",")},
      {"lr", Num(cfg.train.learning_rate)},
      {"max-iters", std::to_string(cfg.max_iters)},
      {"oracle-node-limit", std::to_string(cfg.oracle_node_limit)},
      {"patience", std::to_string(cfg.train.patience)},
      {"policies", Join(PolicyNames(cfg.policies), ",")},
      {"preset", cfg.preset},
      {"seed", std::to_string(cfg.seed)},
      {"split", Join(cfg.splits, ",")},
      {"standardize-targets", cfg.train.standardize_targets ? "1" : "0"},
      {"train-count", std::to_string(cfg.train_count)},
      {"train-seed", std::to_string(cfg.train.seed)},
      {"val-count", std::to_string(cfg.val_count)},
  };
  std::string s;
  for (const auto& [k, v] : kv) s += k + "=" + v + "\n";
  return s;
}

std::string HashHex(const std::string& text) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string MetadataLine(const ExperimentConfig& cfg, const std::string& command,
                         const std::string& extra) {
  std::string line = std::string(kCodeVersion) + " command=" + command +
                     " config_hash=" + HashHex(CanonicalConfig(cfg)) +
                     " seed=" + std::to_string(cfg.seed);
  if (!extra.empty()) line += " " + extra;
  return line;
}

std::vector<std::string> ParallelFor(int n, int workers,
                                     const std::function<void(int)>& fn) {
  std::vector<std::string> errors(n);
  std::atomic<int> next{0};
  auto work = [&] {
    for (int i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (const std::exception& e) {
        errors[i] = e.what();
        if (errors[i].empty()) errors[i] = "unknown error";
        LOG(WARNING) << "item " << i << " failed: " << e.what();
      }
    }
  };
  const int threads = std::clamp(workers, 1, std::max(1, n));
  if (threads == 1) {
    work();
    return errors;
  }
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) pool.emplace_back(work);
  for (std::thread& t : pool) t.join();
  return errors;
}

uint64_t MixSeed(uint64_t a, uint64_t b) {
  // splitmix64 finalizer over a combined word
  uint64_t z = a + 0x9e3779b97f4a7c15ull * (b + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::string FamilyDir(const ExperimentConfig& cfg, Family family) {
  return cfg.out + "/" + ToString(family);
}

std::string ModelPath(const ExperimentConfig& cfg, Family family) {
  return cfg.model.empty() ? FamilyDir(cfg, family) + "/model.json" : cfg.model;
}

Instance MakeSplitInstance(const ExperimentConfig& cfg, Family family,
                           const std::string& split, int index) {
  InstanceSpec spec = PresetSpec(family, cfg.preset);
  spec.seed = MixSeed(MixSeed(MixSeed(cfg.seed, static_cast<uint64_t>(family)),
                              SplitIndex(split)),
                      static_cast<uint64_t>(index)) >> 2;
  char id[128];
  std::snprintf(id, sizeof(id), "%s-%s-%s-%05d", ToString(family), cfg.preset.c_str(),
                split.c_str(), index);
  return Generate(spec, id);
}

std::vector<Instance> LoadInstances(const ExperimentConfig& cfg, Family family,
                                    const std::string& split) {
  std::vector<std::string> files;
  if (!cfg.input.empty()) {
    if (fs::is_directory(cfg.input)) {
      for (const auto& e : fs::directory_iterator(cfg.input)) {
        if (e.path().extension() == ".json") files.push_back(e.path().string());
      }
    } else {
      files.push_back(cfg.input);
    }
  } else {
    const fs::path dir = FamilyDir(cfg, family) + "/instances/" + split;
    if (fs::is_directory(dir)) {
      for (const auto& e : fs::directory_iterator(dir)) {
        if (e.path().extension() == ".json") files.push_back(e.path().string());
      }
    }
  }
  std::vector<Instance> instances;
  for (const std::string& f : files) {
    Instance inst = LoadInstance(f);
    if (inst.spec.family == family) instances.push_back(std::move(inst));
  }
  std::sort(instances.begin(), instances.end(),
            [](const Instance& a, const Instance& b) { return a.id < b.id; });
  if (instances.empty()) {
    LOG(WARNING) << "no " << ToString(family) << " instances for split " << split;
  }
  return instances;
}

OracleEntry SolveOracle(const Instance& instance, int64_t node_limit) {
  IlpOptions opts;
  opts.node_limit = node_limit;
  const IlpResult r = SolveIlp(instance.lp, opts);
  OracleEntry e;
  e.z_int = r.value;
  e.proven = r.proven;
  e.nodes = r.nodes_explored;
  e.status = ToString(r.status);
  return e;
}

void SaveOracleCache(const OracleCache& cache, const std::string& path) {
  json entries = json::object();
  for (const auto& [id, e] : cache) {
    // No incumbent within the node limit: z_int is infinite, stored as null.
    json z = std::isfinite(e.z_int) ? json(e.z_int) : json(nullptr);
    entries[id] = {{"z_int", z},
                   {"proven", e.proven},
                   {"nodes", e.nodes},
                   {"status", e.status}};
  }
  json j = {{"format", "cutremoval-oracle"}, {"version", 1}, {"entries", entries}};
  OpenOut(path) << j.dump(1) << "\n";
}

OracleCache LoadOracleCache(const std::string& path) {
  const json j = json::parse(ReadFile(path));
  if (j.at("format") != "cutremoval-oracle" || j.at("version") != 1) {
    throw std::runtime_error(path + " is not a supported oracle cache");
  }
  OracleCache cache;
  for (const auto& [id, e] : j.at("entries").items()) {
    const json& z = e.at("z_int");
    cache[id] = {z.is_null() ? std::numeric_limits<double>::infinity() : z.get<double>(),
                 e.at("proven").get<bool>(),
                 e.at("nodes").get<int64_t>(), e.at("status").get<std::string>()};
  }
  return cache;
}

Trajectory Rollout(const Instance& instance, const PolicyChoice& policy,
                   const ExperimentConfig& cfg,
                   std::shared_ptr<const MlpParams> model, bool record_cuts,
                   bool record_pool_scores) {
  if (policy.needs_model() && !model) {
    throw MissingModel(policy.name() + " needs a model");
  }
  RunConfig rc;
  rc.max_iters = cfg.max_iters;
  rc.arithmetic = cfg.arith;
  rc.seed = MixSeed(cfg.seed, instance.draw_seed);
  rc.record_cuts = record_cuts;
  rc.record_pool_scores = record_pool_scores;
  const uint64_t policy_seed = std::stoull(HashHex(policy.name()), nullptr, 16);
  if (policy.removal) {
    return RunRemoval(instance.lp, CutScorer{policy.remover, policy_seed, model}, rc,
                      instance.id);
  }
  return RunAddOnly(instance.lp, AdditionPolicy{policy.addition, policy_seed, model}, rc,
                    instance.id);
}

std::vector<double> CarryForward(const std::vector<double>& values, int length) {
  std::vector<double> out(values.begin(),
                          values.begin() + std::min<std::size_t>(values.size(), length));
  const double last = out.empty() ? 0.0 : out.back();
  out.resize(length, last);
  return out;
}

IgcCurve AggregateIgc(const std::string& policy,
                      const std::vector<std::vector<double>>& curves, int length) {
  IgcCurve c;
  c.policy = policy;
  c.instances = static_cast<int>(curves.size());
  c.mean.assign(length, 0.0);
  c.variance.assign(length, 0.0);
  if (curves.empty()) return c;
  for (int k = 0; k < length; ++k) {
    double sum = 0.0;
    for (const auto& v : curves) sum += v[k];
    const double mean = sum / curves.size();
    double sq = 0.0;
    for (const auto& v : curves) sq += (v[k] - mean) * (v[k] - mean);
    c.mean[k] = mean;
    c.variance[k] = sq / curves.size();
  }
  return c;
}

namespace {

std::vector<double> Improvements(const IterationRecord& r) {
  std::vector<double> d;
  for (double s : r.scores) {
    if (std::isfinite(s)) d.push_back(std::max(0.0, s - r.lp_value));
  }
  return d;
}

}  // namespace

std::vector<double> M1Values(const IterationRecord& record) {
  std::vector<double> d = Improvements(record);
  const double denom = std::max(std::abs(record.lp_value), 1e-6);
  for (double& v : d) v /= denom;
  return d;
}

std::vector<double> M2Values(const IterationRecord& record) {
  std::vector<double> d = Improvements(record);
  const double best = d.empty() ? 0.0 : *std::max_element(d.begin(), d.end());
  for (double& v : d) v = best > 0.0 ? v / best : 0.0;
  return d;
}

DistributionMatrix BuildDistribution(const std::vector<Trajectory>& trajs,
                                     const std::string& policy, bool m2, int bins) {
  DistributionMatrix m;
  m.policy = policy;
  m.metric = m2 ? "M2" : "M1";
  std::vector<std::vector<double>> sums;
  for (const Trajectory& t : trajs) {
    for (const IterationRecord& r : t.records) {
      std::vector<double> v = m2 ? M2Values(r) : M1Values(r);
      if (v.empty()) continue;
      std::sort(v.begin(), v.end(), std::greater<>());
      const std::size_t k = r.iter - 1;
      if (sums.size() <= k) {
        sums.resize(k + 1, std::vector<double>(bins, 0.0));
        m.pools.resize(k + 1, 0);
      }
      for (int b = 0; b < bins; ++b) {
        const auto idx = static_cast<std::size_t>((b + 0.5) / bins * v.size());
        sums[k][b] += v[std::min(idx, v.size() - 1)];
      }
      ++m.pools[k];
    }
  }
  for (std::size_t k = 0; k < sums.size(); ++k) {
    for (double& x : sums[k]) x = m.pools[k] ? x / m.pools[k] : 0.0;
  }
  m.rows = std::move(sums);
  return m;
}

void WriteIgcCsv(const std::vector<IgcCurve>& curves, const std::string& metadata,
                 const std::string& path) {
  std::ofstream out = OpenOut(path);
  out << "# " << metadata << "\n";
  out << "policy,iteration,mean_igc,var_igc,std_igc,instances,excluded\n";
  for (const IgcCurve& c : curves) {
    for (std::size_t k = 0; k < c.mean.size(); ++k) {
      out << c.policy << "," << k + 1 << "," << Num(c.mean[k]) << ","
          << Num(c.variance[k]) << "," << Num(std::sqrt(c.variance[k])) << ","
          << c.instances << "," << c.excluded << "\n";
    }
  }
}

void WriteDistributionCsv(const DistributionMatrix& matrix,
                          const std::string& metadata, const std::string& path) {
  std::ofstream out = OpenOut(path);
  out << "# " << metadata << "\n";
  out << "iteration,pools";
  const std::size_t bins = matrix.rows.empty() ? 0 : matrix.rows[0].size();
  for (std::size_t b = 0; b < bins; ++b) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), ",pos_%.4g", (b + 0.5) / bins);
    out << buf;
  }
  out << "\n";
  for (std::size_t k = 0; k < matrix.rows.size(); ++k) {
    out << k + 1 << "," << matrix.pools[k];
    for (double v : matrix.rows[k]) out << "," << Num(v);
    out << "\n";
  }
}

void CmdGen(const ExperimentConfig& cfg) {
  PhaseTimer timer("gen");
  for (Family family : cfg.families) {
    for (const std::string& split : SplitsOr(cfg, {"train", "val", "test"})) {
      const int n = SplitCount(cfg, split);
      const fs::path dir = FamilyDir(cfg, family) + "/instances/" + split;
      ResetDir(dir);
      std::vector<int> rejected(n, 0);
      const auto errors = ParallelFor(n, cfg.workers, [&](int i) {
        const Instance inst = MakeSplitInstance(cfg, family, split, i);
        rejected[i] = inst.rejected_draws;
        SaveInstance(inst, (dir / (inst.id + ".json")).string());
      });
      int total_rejected = 0;
      for (int r : rejected) total_rejected += r;
      const auto failed = std::count_if(errors.begin(), errors.end(),
                                        [](const std::string& e) { return !e.empty(); });
      LOG(INFO) << "gen " << ToString(family) << "/" << split << ": " << n - failed
                << " instances, " << total_rejected << " rejected draws";
    }
  }
}

namespace {

OracleCache OracleFor(const ExperimentConfig& cfg, Family family,
                      const std::string& split, const std::vector<Instance>& instances) {
  const std::string path = FamilyDir(cfg, family) + "/oracle_" + split + ".json";
  OracleCache cache;
  if (fs::exists(path)) cache = LoadOracleCache(path);
  std::vector<int> missing;
  for (int i = 0; i < static_cast<int>(instances.size()); ++i) {
    if (!cache.count(instances[i].id)) missing.push_back(i);
  }
  if (missing.empty()) return cache;
  LOG(INFO) << "solving " << missing.size() << " missing integer optima for "
            << ToString(family) << "/" << split;
  std::vector<OracleEntry> solved(missing.size());
  ParallelFor(static_cast<int>(missing.size()), cfg.workers, [&](int i) {
    solved[i] = SolveOracle(instances[missing[i]], cfg.oracle_node_limit);
  });
  for (std::size_t i = 0; i < missing.size(); ++i) {
    if (!solved[i].status.empty()) cache[instances[missing[i]].id] = solved[i];
  }
  SaveOracleCache(cache, path);
  return cache;
}

}  // namespace

void CmdOracle(const ExperimentConfig& cfg) {
  PhaseTimer timer("oracle");
  for (Family family : cfg.families) {
    for (const std::string& split : SplitsOr(cfg, {"test"})) {
      const std::string path = FamilyDir(cfg, family) + "/oracle_" + split + ".json";
      fs::remove(path);
      const std::vector<Instance> instances = LoadInstances(cfg, family, split);
      const OracleCache cache = OracleFor(cfg, family, split, instances);
      int unproven = 0;
      for (const auto& [id, e] : cache) unproven += !e.proven;
      LOG(INFO) << "oracle " << ToString(family) << "/" << split << ": " << cache.size()
                << " entries, " << unproven << " unproven";
    }
  }
}

void CmdCollect(const ExperimentConfig& cfg) {
  PhaseTimer timer("collect");
  const PolicyChoice lookahead = *ParsePolicy("lookahead");
  for (Family family : cfg.families) {
    for (const std::string& split : SplitsOr(cfg, {"train", "val"})) {
      const std::vector<Instance> instances = LoadInstances(cfg, family, split);
      ResetDir(FamilyDir(cfg, family) + "/trajectories/" + split);
      const auto errors =
          ParallelFor(static_cast<int>(instances.size()), cfg.workers, [&](int i) {
            const Trajectory t =
                Rollout(instances[i], lookahead, cfg, nullptr, true, true);
            SaveTrajectory(t, TrajectoryPath(cfg, family, split, instances[i].id));
          });
      const auto failed = std::count_if(errors.begin(), errors.end(),
                                        [](const std::string& e) { return !e.empty(); });
      LOG(INFO) << "collect " << ToString(family) << "/" << split << ": "
                << instances.size() - failed << " trajectories";
    }
  }
}

namespace {

std::vector<TrainSample> SamplesFor(const ExperimentConfig& cfg, Family family,
                                    const std::string& split) {
  const std::vector<Instance> instances = LoadInstances(cfg, family, split);
  std::vector<std::vector<TrainSample>> parts(instances.size());
  ParallelFor(static_cast<int>(instances.size()), cfg.workers, [&](int i) {
    const std::string path = TrajectoryPath(cfg, family, split, instances[i].id);
    if (!fs::exists(path)) {
      LOG(WARNING) << "no trajectory for " << instances[i].id;
      return;
    }
    parts[i] = BuildDataset(LoadTrajectory(path), instances[i].lp, ToString(family),
                            {.lp = {.arithmetic = cfg.arith}});
  });
  std::vector<TrainSample> all;
  for (auto& p : parts) all.insert(all.end(), p.begin(), p.end());
  return all;
}

}  // namespace

std::vector<TrainOutcome> CmdTrain(const ExperimentConfig& cfg) {
  PhaseTimer timer("train");
  std::vector<TrainOutcome> outcomes;
  for (Family family : cfg.families) {
    const std::string dir = FamilyDir(cfg, family);
    std::vector<TrainSample> train = SamplesFor(cfg, family, "train");
    std::vector<TrainSample> val = SamplesFor(cfg, family, "val");
    if (train.empty()) {
      throw std::runtime_error(std::string("no training samples for ") +
                               ToString(family) + "; run gen and collect first");
    }
    const std::string meta = MetadataLine(cfg, "train", std::string("family=") +
                                                            ToString(family));
    WriteDatasetCsv(train, meta, dir + "/dataset_train.csv");
    WriteDatasetCsv(val, meta, dir + "/dataset_val.csv");
    TrainResult result = TrainSgd(train, val, cfg.train);
    result.params.metadata["family"] = ToString(family);
    result.params.metadata["preset"] = cfg.preset;
    result.params.metadata["config_hash"] = HashHex(CanonicalConfig(cfg));
    result.params.metadata["train_samples"] = std::to_string(train.size());
    result.params.metadata["val_samples"] = std::to_string(val.size());
    SaveModel(result.params, ModelPath(cfg, family));

    std::ofstream out = OpenOut(dir + "/train_report.csv");
    out << "# " << meta << " best_epoch=" << result.report.best_epoch
        << " stopped_early=" << result.report.stopped_early << "\n";
    out << "epoch,train_loss,val_loss\n";
    for (std::size_t e = 0; e < result.report.train_loss.size(); ++e) {
      out << e << "," << Num(result.report.train_loss[e]) << ","
          << (e < result.report.val_loss.size() ? Num(result.report.val_loss[e]) : "")
          << "\n";
    }
    LOG(INFO) << "train " << ToString(family) << ": " << train.size() << " train / "
              << val.size() << " val samples, best epoch " << result.report.best_epoch;
    outcomes.push_back({family, std::move(result), std::move(val)});
  }
  return outcomes;
}

std::vector<EvalResult> CmdEval(const ExperimentConfig& cfg) {
  PhaseTimer timer("eval");
  std::vector<EvalResult> results;
  for (Family family : cfg.families) {
    std::vector<PolicyChoice> policies = cfg.policies;
    if (policies.empty()) {
      const bool have_model = fs::exists(ModelPath(cfg, family));
      for (const char* name : {"random", "mv", "mnv", "lex", "minsim", "lookahead",
                               "neural", "remove-lookahead", "remove-neural",
                               "remove-random"}) {
        const PolicyChoice p = *ParsePolicy(name);
        if (p.needs_model() && !have_model) {
          LOG(WARNING) << "skipping " << name << ": no model at " << ModelPath(cfg, family);
          continue;
        }
        policies.push_back(p);
      }
    }
    const auto model = LoadModelIfNeeded(cfg, family, policies);
    const std::string split = SplitsOr(cfg, {"test"}).front();
    const std::vector<Instance> instances = LoadInstances(cfg, family, split);
    const OracleCache oracle = OracleFor(cfg, family, split, instances);

    EvalResult res{family, {}};
    for (const PolicyChoice& policy : policies) {
      std::vector<std::vector<double>> curves(instances.size());
      std::vector<char> keep(instances.size(), 0);
      ParallelFor(static_cast<int>(instances.size()), cfg.workers, [&](int i) {
        const auto it = oracle.find(instances[i].id);
        if (it == oracle.end() || it->second.status == "Infeasible") {
          throw std::runtime_error("no integer optimum for " + instances[i].id);
        }
        if (!std::isfinite(it->second.z_int)) return;  // no incumbent; excluded
        const Trajectory t = Rollout(instances[i], policy, cfg, model, false, false);
        curves[i] = CarryForward(ComputeIgc(t, it->second.z_int), cfg.max_iters);
        keep[i] = 1;
      });
      std::vector<std::vector<double>> kept;
      for (std::size_t i = 0; i < instances.size(); ++i) {
        if (keep[i]) kept.push_back(std::move(curves[i]));
      }
      IgcCurve curve = AggregateIgc(policy.name(), kept, cfg.max_iters);
      curve.excluded = static_cast<int>(instances.size() - kept.size());
      LOG(INFO) << "eval " << ToString(family) << " " << policy.name() << ": IGC at "
                << cfg.max_iters << " = " << curve.mean.back() << " over "
                << curve.instances << " instances";
      res.curves.push_back(std::move(curve));
    }
    std::string extra = std::string("family=") + ToString(family) +
                        " preset=" + cfg.preset +
                        " policies=" + Join(PolicyNames(policies), ",");
    if (model) extra += " model_hash=" + HashHex(ReadFile(ModelPath(cfg, family)));
    WriteIgcCsv(res.curves, MetadataLine(cfg, "eval", extra),
                cfg.out + "/igc_" + ToString(family) + ".csv");
    results.push_back(std::move(res));
  }
  return results;
}

std::vector<DistributionMatrix> CmdAnalyze(const ExperimentConfig& cfg) {
  PhaseTimer timer("analyze");
  std::vector<PolicyChoice> policies = cfg.policies;
  if (policies.empty()) policies = {*ParsePolicy("random"), *ParsePolicy("lookahead")};
  for (const PolicyChoice& p : policies) {
    if (p.removal) {
      throw std::invalid_argument("analyze needs cut addition policies, got " + p.name());
    }
  }
  std::vector<DistributionMatrix> out;
  for (Family family : cfg.families) {
    const auto model = LoadModelIfNeeded(cfg, family, policies);
    const std::string split = SplitsOr(cfg, {"test"}).front();
    const std::vector<Instance> instances = LoadInstances(cfg, family, split);
    for (const PolicyChoice& policy : policies) {
      std::vector<Trajectory> trajs(instances.size());
      ParallelFor(static_cast<int>(instances.size()), cfg.workers, [&](int i) {
        trajs[i] = Rollout(instances[i], policy, cfg, model, false, true);
      });
      for (bool m2 : {false, true}) {
        DistributionMatrix m = BuildDistribution(trajs, policy.name(), m2, cfg.bins);
        m.family = family;
        const std::string extra = std::string("family=") + ToString(family) +
                                  " preset=" + cfg.preset + " policy=" + policy.name() +
                                  " metric=" + m.metric +
                                  " instances=" + std::to_string(instances.size());
        WriteDistributionCsv(m, MetadataLine(cfg, "analyze", extra),
                             cfg.out + "/dist_" + ToString(family) + "_" + m.metric +
                                 "_" + policy.name() + ".csv");
        out.push_back(std::move(m));
      }
    }
  }
  return out;
}

}  // namespace cutremoval
