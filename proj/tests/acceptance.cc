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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any fails. Usage: acceptance [work_dir]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <glog/logging.h>

#include "cutremoval/bench.h"
#include "cutremoval/ilp_oracle.h"
#include "test_oracles.h"

namespace cutremoval {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string Fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), format, args...);
  return buf;
}

// A trajectory with what the checks need to judge it.
struct Run {
  Trajectory traj;
  const LinearProgram* lp = nullptr;
  double z_int = 0.0;
};

int Workers() { return std::max(1u, std::thread::hardware_concurrency()); }

bool Satisfies(const std::vector<Cut>& cuts, const IntPoint& p) {
  for (const Cut& c : cuts) {
    double s = 0.0;
    for (std::size_t j = 0; j < p.size(); ++j) s += c.alpha[j] * double(p[j]);
    if (s > c.beta + 1e-9) return false;
  }
  return true;
}

// Criterion 1. Also returns the trajectories for the bookkeeping checks.
Outcome CutValidity(std::vector<Instance>& instances, std::vector<Run>* runs) {
  ExperimentConfig cfg;
  cfg.preset = "tiny";
  cfg.seed = 101;
  cfg.max_iters = 15;
  for (Family f : kAllFamilies) {
    for (int i = 0; i < 200; ++i) instances.push_back(MakeSplitInstance(cfg, f, "test", i));
  }
  const PolicyChoice policies[] = {*ParsePolicy("random"), *ParsePolicy("remove-random")};
  const int n = static_cast<int>(instances.size());
  std::vector<std::vector<Run>> found(n);
  std::vector<int64_t> cuts(n, 0), bad(n, 0);
  std::vector<std::string> example(n);
  int max_vars = 0;
  for (const Instance& inst : instances) max_vars = std::max(max_vars, inst.lp.num_vars);
  const auto errors = ParallelFor(n, Workers(), [&](int i) {
    const Instance& inst = instances[i];
    const auto points = EnumerateIntegerPoints(inst.lp, InferUpperBounds(inst.lp));
    if (points.empty()) throw std::runtime_error(inst.id + " has no integer point");
    double z = ObjectiveValue(inst.lp, points[0]);
    for (const IntPoint& p : points) z = std::min(z, ObjectiveValue(inst.lp, p));
    for (const PolicyChoice& policy : policies) {
      Trajectory t = Rollout(inst, policy, cfg, nullptr, true, false);
      for (const IterationRecord& r : t.records) {
        std::vector<double> x = r.x_star;
        if (policy.removal) x = SolveLp(WithCuts(inst.lp, r.active_cuts)).x;
        std::vector<IntPoint> kept;
        for (const IntPoint& p : points) {
          if (Satisfies(r.active_cuts, p)) kept.push_back(p);
        }
        for (const Cut& c : r.pool) {
          ++cuts[i];
          double ax = 0.0;
          for (std::size_t j = 0; j < x.size(); ++j) ax += c.alpha[j] * x[j];
          const bool separates = ax - c.beta > 1e-7;
          const bool valid = std::all_of(kept.begin(), kept.end(), [&](const IntPoint& p) {
            return Satisfies({c}, p);
          });
          if (!separates || !valid) {
            ++bad[i];
            if (example[i].empty()) {
              example[i] = inst.id + " " + policy.name() + " iter " +
                           std::to_string(r.iter) + (separates ? " invalid" : " not separating");
            }
          }
        }
      }
      found[i].push_back({std::move(t), &inst.lp, z});
    }
  });
  int64_t total = 0, failures = 0;
  std::string first;
  for (int i = 0; i < n; ++i) {
    total += cuts[i];
    failures += bad[i] + (errors[i].empty() ? 0 : 1);
    if (first.empty() && !example[i].empty()) first = example[i];
    if (first.empty() && !errors[i].empty()) first = errors[i];
    for (Run& r : found[i]) runs->push_back(std::move(r));
  }
  return {failures == 0 && total > 0,
          Fmt("%lld cuts from %d tiny instances (<= %d vars) in both modes, %lld failures%s",
              (long long)total, n, max_vars, (long long)failures,
              first.empty() ? "" : ("; first: " + first).c_str())};
}

// Criterion 2.
Outcome OptimumPreserved(std::vector<Instance>& instances, std::vector<Run>* runs) {
  ExperimentConfig cfg;
  cfg.preset = "tiny";
  cfg.seed = 202;
  cfg.max_iters = 15;
  for (Family f : kAllFamilies) {
    for (int i = 0; i < 20; ++i) instances.push_back(MakeSplitInstance(cfg, f, "test", i));
  }
  const int n = static_cast<int>(instances.size());
  std::vector<int> checked(n, 0), bad(n, 0);
  std::vector<Run> found(n);
  const auto errors = ParallelFor(n, Workers(), [&](int i) {
    const Instance& inst = instances[i];
    const PolicyChoice policy = *ParsePolicy(i % 2 ? "remove-random" : "remove-lookahead");
    const IlpResult root = SolveIlp(inst.lp);
    if (root.status != IlpStatus::kOptimal) throw std::runtime_error("no optimum");
    Trajectory t = Rollout(inst, policy, cfg, nullptr, true, false);
    for (const IterationRecord& r : t.records) {
      const IlpResult cut = SolveIlp(WithCuts(inst.lp, r.active_cuts));
      ++checked[i];
      if (cut.status != IlpStatus::kOptimal || cut.value != root.value) ++bad[i];
    }
    found[i] = {std::move(t), &inst.lp, root.value};
  });
  int total = 0, failures = 0;
  for (int i = 0; i < n; ++i) {
    total += checked[i];
    failures += bad[i] + (errors[i].empty() ? 0 : 1);
    runs->push_back(std::move(found[i]));
  }
  return {failures == 0 && total > 0,
          Fmt("%d iterations on %d tiny instances, %d with a changed integer optimum",
              total, n, failures)};
}

// Extra trajectories for monotonicity: every policy on small instances.
void PolicySweep(std::vector<Instance>& instances, const std::string& model_dir,
                 std::vector<Run>* runs) {
  ExperimentConfig cfg;
  cfg.preset = "small";
  cfg.seed = 303;
  cfg.max_iters = 15;
  cfg.out = model_dir;
  for (Family f : kAllFamilies) {
    for (int i = 0; i < 20; ++i) instances.push_back(MakeSplitInstance(cfg, f, "test", i));
  }
  // One model for every family; monotonicity does not depend on its quality.
  const auto model = std::make_shared<const MlpParams>(
      LoadModel(ModelPath(cfg, Family::kPacking)));
  std::vector<PolicyChoice> policies;
  for (const char* name : {"random", "mv", "mnv", "lex", "minsim", "lookahead", "neural",
                           "remove-lookahead", "remove-neural", "remove-random"}) {
    policies.push_back(*ParsePolicy(name));
  }
  const int n = static_cast<int>(instances.size());
  std::vector<std::vector<Run>> found(n);
  ParallelFor(n, Workers(), [&](int i) {
    const double z = SolveIlp(instances[i].lp).value;
    for (const PolicyChoice& p : policies) {
      found[i].push_back({Rollout(instances[i], p, cfg, model, false, false),
                          &instances[i].lp, z});
    }
  });
  for (auto& f : found) {
    for (Run& r : f) runs->push_back(std::move(r));
  }
}

// Criterion 3.
Outcome Monotone(const std::vector<Run>& runs) {
  int bad_bound = 0, bad_igc = 0, zero_gap = 0, removal = 0;
  std::string first;
  for (const Run& run : runs) {
    removal += run.traj.mode == RunMode::kRemoval;
    const std::vector<double> values = BoundSequence(run.traj);
    for (std::size_t k = 1; k < values.size(); ++k) {
      if (values[k] < values[k - 1] - 1e-7) {
        ++bad_bound;
        if (first.empty()) {
          first = run.traj.instance_id + " " + run.traj.policy_id + " iter " +
                  std::to_string(k + 1);
        }
        break;
      }
    }
    const std::vector<double> igc = ComputeIgc(values, run.z_int);
    const bool gap = !values.empty() && std::abs(run.z_int - values[0]) > 1e-9;
    zero_gap += !gap;
    bool ok = std::all_of(igc.begin(), igc.end(),
                          [](double v) { return v >= 0.0 && v <= 1.0; });
    if (gap && igc[0] != 0.0) ok = false;
    // The bound sequence never passes the integer optimum.
    for (double v : values) ok = ok && v <= run.z_int + 1e-6 * std::max(1.0, std::abs(run.z_int));
    bad_igc += !ok;
  }
  return {bad_bound == 0 && bad_igc == 0,
          Fmt("%zu trajectories (%d removal): %d with a decreasing bound, %d with IGC "
              "outside [0,1] or IGC_1 != 0; %d zero-gap runs have IGC 1 throughout%s",
              runs.size(), removal, bad_bound, bad_igc, zero_gap,
              first.empty() ? "" : ("; first: " + first).c_str())};
}

// Criterion 4.
Outcome Budget(const std::vector<Run>& runs) {
  int64_t records = 0, literal = 0, short_pool = 0, bad = 0;
  int trajs = 0;
  std::string first;
  for (const Run& run : runs) {
    if (run.traj.mode != RunMode::kRemoval) continue;
    ++trajs;
    const int m = run.lp->num_rows();
    const auto& recs = run.traj.records;
    for (std::size_t i = 0; i < recs.size(); ++i) {
      const IterationRecord& r = recs[i];
      const int k = r.iter;
      ++records;
      int expected = 0;
      if (k >= 2) {
        const int candidates = recs[i - 1].num_active + recs[i - 1].pool_size;
        expected = std::min(k, candidates) + 1;
        if (candidates < k) ++short_pool;
      }
      const int full_budget = k >= 2 ? k + 1 : 0;
      literal += r.num_active == full_budget;
      const bool rows_ok = r.lp_rows == m + r.num_active + r.pool_size &&
                           m + r.num_active <= m + k + 1;
      if (r.num_active != expected || !rows_ok) {
        ++bad;
        if (first.empty()) {
          first = run.traj.instance_id + " iter " + std::to_string(k) + ": |P_k| = " +
                  std::to_string(r.num_active) + ", expected " + std::to_string(expected);
        }
      }
    }
  }
  return {bad == 0 && records > 0,
          Fmt("%lld iterations of %d removal runs: %lld off-budget; |P_k| = k + 1 (k >= 2, "
              "0 at k = 1) literally on %lld, the rest had fewer than k candidates to "
              "keep (%lld)%s",
              (long long)records, trajs, (long long)bad, (long long)literal,
              (long long)short_pool, first.empty() ? "" : ("; first: " + first).c_str())};
}

// Criterion 5.
Outcome SolverOracles() {
  std::mt19937_64 rng(505);
  int lp_bad = 0, lps = 0;
  for (int t = 0; t < 500; ++t) {
    const LinearProgram lp = testing::RandomBoundedLp(rng, 10);
    const auto expected = testing::VertexEnumerationValue(lp);
    const LpSolution sol = SolveLp(lp);
    ++lps;
    if (!expected) {
      lp_bad += sol.status != LpStatus::kInfeasible;
    } else {
      lp_bad += sol.status != LpStatus::kOptimal || std::abs(sol.value - *expected) > 1e-6;
    }
  }
  int ilp_bad = 0, ilps = 0;
  for (int t = 0; t < 200; ++t) {
    std::vector<int64_t> bounds;
    const LinearProgram lp = testing::RandomBoxedIlp(rng, 10, 2, &bounds);
    const auto expected = testing::BoxEnumerationValue(lp, bounds);
    const IlpResult r = SolveIlp(lp);
    ++ilps;
    if (!expected) {
      ilp_bad += r.status != IlpStatus::kInfeasible;
    } else {
      ilp_bad += r.status != IlpStatus::kOptimal || r.value != *expected;
    }
  }
  return {lp_bad == 0 && ilp_bad == 0,
          Fmt("%d/%d LPs match vertex enumeration within 1e-6, %d/%d ILPs match box "
              "enumeration exactly",
              lps - lp_bad, lps, ilps - ilp_bad, ilps)};
}

// Criterion 6.
Outcome GradientCheck() {
  std::mt19937_64 rng(606);
  std::normal_distribution<double> normal(0.0, 1.0);
  double worst = 0.0;
  for (int draw = 0; draw < 100; ++draw) {
    MlpParams p = InitMlp(draw);
    std::vector<std::vector<double>> inputs(4, std::vector<double>(kNumFeatures));
    std::vector<double> targets(4);
    for (int s = 0; s < 4; ++s) {
      for (double& v : inputs[s]) v = normal(rng);
      targets[s] = normal(rng);
    }
    std::vector<double> grad;
    LossAndGradient(p, inputs, targets, &grad);
    std::vector<double> flat = Flatten(p);
    constexpr double kStep = 1e-5;
    for (std::size_t i = 0; i < flat.size(); ++i) {
      const double orig = flat[i];
      flat[i] = orig + kStep;
      Unflatten(flat, &p);
      const double up = LossAndGradient(p, inputs, targets, nullptr);
      flat[i] = orig - kStep;
      Unflatten(flat, &p);
      const double down = LossAndGradient(p, inputs, targets, nullptr);
      flat[i] = orig;
      const double fd = (up - down) / (2 * kStep);
      worst = std::max(worst, std::abs(fd - grad[i]) /
                                  std::max(1e-6, std::abs(fd) + std::abs(grad[i])));
    }
    Unflatten(flat, &p);
  }
  return {worst < 1e-4,
          Fmt("max relative error %.3g over 100 draws of a 14-32-32-1 network", worst)};
}

std::vector<double> Ranks(const std::vector<double>& v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(v.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
    for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = 0.5 * (i + j);
    i = j + 1;
  }
  return ranks;
}

// Pearson correlation of ranks; nullopt when either side is constant.
std::optional<double> Spearman(const std::vector<double>& a, const std::vector<double>& b) {
  const std::vector<double> ra = Ranks(a), rb = Ranks(b);
  const double n = ra.size();
  const double ma = std::accumulate(ra.begin(), ra.end(), 0.0) / n;
  const double mb = std::accumulate(rb.begin(), rb.end(), 0.0) / n;
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    sab += (ra[i] - ma) * (rb[i] - mb);
    saa += (ra[i] - ma) * (ra[i] - ma);
    sbb += (rb[i] - mb) * (rb[i] - mb);
  }
  if (saa == 0 || sbb == 0) return std::nullopt;
  return sab / std::sqrt(saa * sbb);
}

// Criterion 7, on the packing model of the first pipeline run.
Outcome LearningSignal(const TrainOutcome& packing, const ExperimentConfig& cfg) {
  const MlpParams& params = packing.result.params;
  const std::vector<TrainSample>& val = packing.val;
  if (val.empty()) return {false, "no validation samples"};
  double mean = 0.0;
  for (const TrainSample& s : val) mean += s.target;
  mean /= val.size();
  double var = 0.0, mse = 0.0;
  std::vector<double> pred(val.size());
  for (std::size_t i = 0; i < val.size(); ++i) {
    pred[i] = Forward(params, val[i].features);
    var += (val[i].target - mean) * (val[i].target - mean);
    mse += (pred[i] - val[i].target) * (pred[i] - val[i].target);
  }
  var /= val.size();
  mse /= val.size();

  // Pool cut ids per (instance, iteration) from the recorded trajectories.
  std::map<std::pair<std::string, int>, std::set<int64_t>> pools;
  for (const auto& e : fs::directory_iterator(FamilyDir(cfg, Family::kPacking) +
                                              "/trajectories/val")) {
    const Trajectory t = LoadTrajectory(e.path().string());
    for (const IterationRecord& r : t.records) {
      for (const Cut& c : r.pool) pools[{t.instance_id, r.iter}].insert(c.id);
    }
  }
  std::map<std::pair<std::string, int>, std::pair<std::vector<double>, std::vector<double>>>
      groups;
  for (std::size_t i = 0; i < val.size(); ++i) {
    const auto key = std::make_pair(val[i].instance_id, val[i].iteration);
    const auto it = pools.find(key);
    if (it == pools.end() || !it->second.count(val[i].cut_id)) continue;
    groups[key].first.push_back(pred[i]);
    groups[key].second.push_back(val[i].target);
  }
  std::vector<double> rhos;
  for (const auto& [key, g] : groups) {
    if (g.first.size() < 2) continue;
    if (const auto rho = Spearman(g.first, g.second)) rhos.push_back(*rho);
  }
  if (rhos.empty()) return {false, "no cutpool with a defined rank correlation"};
  std::sort(rhos.begin(), rhos.end());
  const double median = rhos.size() % 2 ? rhos[rhos.size() / 2]
                                        : 0.5 * (rhos[rhos.size() / 2 - 1] +
                                                 rhos[rhos.size() / 2]);
  return {mse < 0.5 * var && median > 0.0,
          Fmt("validation MSE %.4g vs 0.5 x target variance %.4g (ratio %.3f); median "
              "per-cutpool Spearman %.3f over %zu pools; %zu val samples",
              mse, 0.5 * var, mse / var, median, rhos.size(), val.size())};
}

double At(const EvalResult& r, const std::string& policy, int iter) {
  for (const IgcCurve& c : r.curves) {
    if (c.policy == policy) return c.mean[iter - 1];
  }
  throw std::runtime_error("no curve for " + policy);
}

// Criterion 8.
Outcome Directional(const std::vector<EvalResult>& eval) {
  const char* additions[] = {"random", "mv", "mnv", "lex", "minsim", "lookahead", "neural"};
  bool pass = true;
  std::string detail;
  for (const EvalResult& r : eval) {
    double best = 0.0, best_plain = 0.0;
    std::string best_name, best_plain_name;
    for (const char* a : additions) {
      const double v = At(r, a, 10);
      if (v > best) best = v, best_name = a;
      if (std::string(a) != "lookahead" && v > best_plain) best_plain = v, best_plain_name = a;
    }
    const double rl = At(r, "remove-lookahead", 10);
    const double rn = At(r, "remove-neural", 10);
    pass = pass && rl >= best - 0.02;
    detail += Fmt("%s: remove-lookahead %.4f vs best addition %s %.4f", ToString(r.family),
                  rl, best_name.c_str(), best);
    if (r.family == Family::kPacking) {
      pass = pass && rn >= best_plain - 0.05;
      detail += Fmt(", remove-neural %.4f vs best non-look-ahead %s %.4f", rn,
                    best_plain_name.c_str(), best_plain);
    }
    detail += "; ";
  }
  return {pass, "IGC at iteration 10, " + detail.substr(0, detail.size() - 2)};
}

// Criterion 9.
Outcome EarlyMass(const std::vector<DistributionMatrix>& matrices) {
  bool pass = true;
  int checked = 0;
  std::string detail;
  for (const DistributionMatrix& m : matrices) {
    if (m.metric != "M2" || m.rows.empty()) continue;
    ++checked;
    const double first = std::accumulate(m.rows.front().begin(), m.rows.front().end(), 0.0);
    const double last = std::accumulate(m.rows.back().begin(), m.rows.back().end(), 0.0);
    pass = pass && first > last;
    detail += Fmt("%s/%s first %.3f last(row %zu) %.3f; ", ToString(m.family),
                  m.policy.c_str(), first, m.rows.size(), last);
  }
  return {pass && checked == 4, "M2 row mass, 500 small instances each: " +
                                    detail.substr(0, detail.size() - 2)};
}

std::map<std::string, std::string> CsvFiles(const fs::path& root) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (e.path().extension() != ".csv") continue;
    std::ifstream in(e.path(), std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    files[fs::relative(e.path(), root).string()] = ss.str();
  }
  return files;
}

// Criterion 10.
Outcome Determinism(const fs::path& a, const fs::path& b) {
  const auto fa = CsvFiles(a), fb = CsvFiles(b);
  int differ = 0;
  std::string first;
  for (const auto& [name, content] : fa) {
    const auto it = fb.find(name);
    if (it == fb.end() || it->second != content) {
      ++differ;
      if (first.empty()) first = name;
    }
  }
  differ += static_cast<int>(fb.size() > fa.size() ? fb.size() - fa.size() : 0);
  return {differ == 0 && !fa.empty(),
          Fmt("%zu CSV files compared across two pipeline runs (1 and %d workers), %d "
              "differ%s",
              fa.size(), Workers() + 1, differ,
              first.empty() ? "" : (", first " + first).c_str())};
}

ExperimentConfig PipelineConfig(const fs::path& out, int workers) {
  ExperimentConfig cfg;
  cfg.families = {Family::kPacking, Family::kSetCover};
  cfg.preset = "small";
  cfg.train_count = 200;
  cfg.val_count = 50;
  cfg.count = 50;
  cfg.max_iters = 15;
  cfg.seed = 2026;
  cfg.out = out.string();
  cfg.workers = workers;
  // Desk-scale training: far fewer samples than the full setup, so smaller
  // batches and a larger step.
  cfg.train.learning_rate = 0.05;
  cfg.train.batch_size = 64;
  cfg.train.epochs = 100;
  cfg.train.patience = 20;
  return cfg;
}

struct PipelineOutput {
  std::vector<TrainOutcome> train;
  std::vector<EvalResult> eval;
};

PipelineOutput RunPipeline(const ExperimentConfig& cfg) {
  PipelineOutput out;
  CmdGen(cfg);
  CmdOracle(cfg);
  CmdCollect(cfg);
  out.train = CmdTrain(cfg);
  out.eval = CmdEval(cfg);
  CmdAnalyze(cfg);
  return out;
}

int Main(int argc, char** argv) {
  const fs::path work = argc > 1 ? fs::path(argv[1])
                                 : fs::temp_directory_path() / "cutremoval_acceptance";
  fs::remove_all(work);
  fs::create_directories(work);
  std::map<int, Outcome> results;
  auto timed = [&](int id, const std::function<Outcome()>& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    try {
      results[id] = fn();
    } catch (const std::exception& e) {
      results[id] = {false, std::string("threw: ") + e.what()};
    }
    const double s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cerr << "[criterion " << id << " finished in " << s << " s]\n";
  };

  timed(5, SolverOracles);
  timed(6, GradientCheck);

  std::vector<Run> runs;
  std::vector<Instance> tiny1, tiny2, small;
  timed(1, [&] { return CutValidity(tiny1, &runs); });
  timed(2, [&] { return OptimumPreserved(tiny2, &runs); });

  PipelineOutput first;
  timed(8, [&] {
    first = RunPipeline(PipelineConfig(work / "run_a", 1));
    return Directional(first.eval);
  });
  timed(7, [&] {
    for (const TrainOutcome& t : first.train) {
      if (t.family == Family::kPacking) {
        return LearningSignal(t, PipelineConfig(work / "run_a", 1));
      }
    }
    return Outcome{false, "no packing model"};
  });
  timed(10, [&] {
    RunPipeline(PipelineConfig(work / "run_b", Workers() + 1));
    return Determinism(work / "run_a", work / "run_b");
  });

  timed(3, [&] {
    PolicySweep(small, (work / "run_a").string(), &runs);
    return Monotone(runs);
  });
  timed(4, [&] { return Budget(runs); });

  timed(9, [&] {
    ExperimentConfig cfg = PipelineConfig(work / "analysis", Workers());
    cfg.count = 500;
    cfg.splits = {"test"};
    CmdGen(cfg);
    return EarlyMass(CmdAnalyze(cfg));
  });

  const char* names[] = {"",
                         "cut validity",
                         "integer optimum preserved",
                         "monotone bounds and IGC range",
                         "removal constraint budget",
                         "simplex and branch-and-bound oracles",
                         "MLP gradient check",
                         "learning signal",
                         "removal vs addition IGC",
                         "early bound improvement mass",
                         "determinism"};
  bool all = true;
  for (const auto& [id, o] : results) {
    std::cout << "criterion " << id << " " << (o.pass ? "PASS" : "FAIL") << " "
              << names[id] << ": " << o.detail << "\n";
    all = all && o.pass;
  }
  return all ? 0 : 1;
}

}  // namespace
}  // namespace cutremoval

int main(int argc, char** argv) {
  google::InitGoogleLogging(argv[0]);
  FLAGS_logtostderr = true;
  FLAGS_minloglevel = 1;
  return cutremoval::Main(argc, argv);
}
