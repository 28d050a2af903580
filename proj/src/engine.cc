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

#include "cutremoval/engine.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <utility>

#include <glog/logging.h>

#include "json.hpp"

namespace cutremoval {
namespace {

using nlohmann::json;

// Solve or explain why not.
std::optional<LpSolution> Solve(const StandardForm& sf, const LinearProgram& lp,
                                const SimplexOptions& opts, std::string* failure) {
  // The relaxation plus valid cuts stays feasible and bounded, so a float
  // failure is numerical and gets one exact retry.
  SimplexOptions o = opts;
  for (;;) {
    try {
      LpSolution sol = SolveVerified(sf, lp, o);
      if (sol.status == LpStatus::kOptimal) return sol;
      *failure = std::string("LP became ") + ToString(sol.status);
    } catch (const CycleLimitExceeded& e) {
      *failure = e.what();
    }
    if (o.arithmetic == Arithmetic::kRational) return std::nullopt;
    o.arithmetic = Arithmetic::kRational;
  }
}

void Fail(Trajectory& t, std::string why) {
  t.status = TerminalStatus::kNumericalFailure;
  t.failure = std::move(why);
  LOG(WARNING) << "trajectory " << t.instance_id << " / " << t.policy_id
               << " failed: " << t.failure;
}

json CutToJson(const Cut& c) {
  return {{"id", c.id},
          {"born_iter", c.born_iter},
          {"kind", c.kind == CutKind::kBound ? "bound" : "gomory"},
          {"alpha", c.alpha},
          {"beta", c.beta},
          {"source_column", c.source_column},
          {"source_value", c.source_value},
          {"row_norm", c.row_norm}};
}

Cut CutFromJson(const json& j) {
  Cut c;
  c.id = j.at("id").get<int64_t>();
  c.born_iter = j.at("born_iter").get<int>();
  c.kind = j.at("kind").get<std::string>() == "bound" ? CutKind::kBound : CutKind::kGomory;
  c.alpha = j.at("alpha").get<std::vector<double>>();
  c.beta = j.at("beta").get<double>();
  c.source_column = j.at("source_column").get<int>();
  c.source_value = j.at("source_value").get<double>();
  c.row_norm = j.at("row_norm").get<double>();
  return c;
}

json CutsToJson(const std::vector<Cut>& cuts) {
  json a = json::array();
  for (const Cut& c : cuts) a.push_back(CutToJson(c));
  return a;
}

std::vector<Cut> CutsFromJson(const json& a) {
  std::vector<Cut> cuts;
  for (const json& j : a) cuts.push_back(CutFromJson(j));
  return cuts;
}

// JSON has no infinity; failed look-ahead scores are written as null.
json ScoresToJson(const std::vector<double>& scores) {
  json a = json::array();
  for (double s : scores) {
    if (std::isfinite(s)) {
      a.push_back(s);
    } else {
      a.push_back(nullptr);
    }
  }
  return a;
}

std::vector<double> ScoresFromJson(const json& a) {
  std::vector<double> scores;
  for (const json& s : a) {
    scores.push_back(s.is_null() ? -std::numeric_limits<double>::infinity()
                                 : s.get<double>());
  }
  return scores;
}

}  // namespace

const char* ToString(RunMode mode) {
  return mode == RunMode::kAddOnly ? "add-only" : "removal";
}

const char* ToString(TerminalStatus status) {
  switch (status) {
    case TerminalStatus::kIntegralFound:
      return "IntegralFound";
    case TerminalStatus::kIterLimit:
      return "IterLimit";
    case TerminalStatus::kNumericalFailure:
      return "NumericalFailure";
  }
  return "?";
}

double SnapCeil(double v, double tol) {
  const double r = std::round(v);
  if (std::abs(v - r) <= tol) return r;
  return std::ceil(v);
}

Cut BoundCut(const LinearProgram& lp, double value, int64_t id, int born_iter) {
  const bool integral_c = std::all_of(lp.objective.begin(), lp.objective.end(),
                                      [](double c) { return c == std::floor(c); });
  Cut cut;
  cut.kind = CutKind::kBound;
  cut.id = id;
  cut.born_iter = born_iter;
  cut.alpha.resize(lp.num_vars);
  for (int j = 0; j < lp.num_vars; ++j) cut.alpha[j] = -lp.objective[j];
  cut.beta = -(integral_c ? SnapCeil(value) : value);
  return cut;
}

Trajectory RunAddOnly(const LinearProgram& lp, const AdditionPolicy& policy,
                      const RunConfig& cfg, std::string instance_id) {
  Trajectory t;
  t.instance_id = std::move(instance_id);
  t.policy_id = PolicyName(policy.kind);
  t.mode = RunMode::kAddOnly;
  t.max_iters = cfg.max_iters;
  const SimplexOptions opts{.arithmetic = cfg.arithmetic};
  std::mt19937_64 rng(cfg.seed ^ policy.rng_seed);
  CutIdAllocator ids;
  std::vector<Cut> active;

  for (int k = 1; k <= cfg.max_iters; ++k) {
    const LinearProgram current = WithCuts(lp, active);
    const StandardForm sf = ToStandardForm(current);
    std::string failure;
    const auto sol = Solve(sf, current, opts, &failure);
    if (!sol) {
      Fail(t, "iteration " + std::to_string(k) + ": " + failure);
      return t;
    }
    IterationRecord rec;
    rec.iter = k;
    rec.lp_value = rec.pooled_value = sol->value;
    rec.num_active = static_cast<int>(active.size());
    rec.lp_rows = current.num_rows();
    rec.x_star = sol->x;
    t.final_value = sol->value;
    if (cfg.record_cuts) rec.active_cuts = active;
    if (IsIntegral(sol->x, cfg.integrality_tol)) {
      t.records.push_back(std::move(rec));
      t.status = TerminalStatus::kIntegralFound;
      return t;
    }

    CutPlaneState state;
    state.base = &lp;
    state.active_cuts = active;
    state.pool = GenerateCutpool(*sol, sf, current, k, ids, cfg.gomory);
    state.iter = k;
    state.x_star = sol->x;
    state.lp_value = sol->value;
    state.lp_options = opts;
    rec.pool_size = state.pool.size();
    if (cfg.record_cuts) rec.pool = state.pool.cuts;
    if (state.pool.empty()) {
      t.records.push_back(std::move(rec));
      Fail(t, "iteration " + std::to_string(k) + ": fractional optimum but no cut");
      return t;
    }

    std::vector<double> scores;
    const int64_t chosen = SelectAddition(state, policy, rng, &scores);
    if (policy.kind == AdditionKind::kLookAhead) {
      rec.scores = std::move(scores);
    } else if (cfg.record_pool_scores) {
      rec.scores = LookaheadAddScores(state.pool.cuts, state);
    }
    rec.selected_ids = {chosen};
    for (const Cut& c : state.pool.cuts) {
      if (c.id == chosen) active.push_back(c);
    }
    t.records.push_back(std::move(rec));
  }
  t.status = TerminalStatus::kIterLimit;
  return t;
}

Trajectory RunRemoval(const LinearProgram& lp, const CutScorer& scorer,
                      const RunConfig& cfg, std::string instance_id) {
  Trajectory t;
  t.instance_id = std::move(instance_id);
  t.policy_id = PolicyName(scorer.kind);
  t.mode = RunMode::kRemoval;
  t.max_iters = cfg.max_iters;
  const SimplexOptions opts{.arithmetic = cfg.arithmetic};
  std::mt19937_64 rng(cfg.seed ^ scorer.rng_seed);
  CutIdAllocator ids;
  std::vector<Cut> active;

  for (int k = 1; k <= cfg.max_iters; ++k) {
    const LinearProgram current = WithCuts(lp, active);
    const StandardForm sf = ToStandardForm(current);
    std::string failure;
    const auto base_sol = Solve(sf, current, opts, &failure);
    if (!base_sol) {
      Fail(t, "iteration " + std::to_string(k) + ": " + failure);
      return t;
    }
    IterationRecord rec;
    rec.iter = k;
    rec.lp_value = base_sol->value;
    rec.num_active = static_cast<int>(active.size());
    if (cfg.record_cuts) rec.active_cuts = active;

    CutPlaneState state;
    state.base = &lp;
    state.active_cuts = active;
    state.pool = GenerateCutpool(*base_sol, sf, current, k, ids, cfg.gomory);
    state.iter = k;
    state.lp_options = opts;
    rec.pool_size = state.pool.size();
    if (cfg.record_cuts) rec.pool = state.pool.cuts;

    const LinearProgram pooled = WithCuts(current, state.pool.cuts);
    rec.lp_rows = pooled.num_rows();
    const auto sol = Solve(ToStandardForm(pooled), pooled, opts, &failure);
    if (!sol) {
      t.records.push_back(std::move(rec));
      Fail(t, "iteration " + std::to_string(k) + " (pooled): " + failure);
      return t;
    }
    rec.pooled_value = sol->value;
    rec.x_star = sol->x;
    t.final_value = sol->value;
    if (IsIntegral(sol->x, cfg.integrality_tol)) {
      t.records.push_back(std::move(rec));
      t.status = TerminalStatus::kIntegralFound;
      return t;
    }
    if (state.pool.empty()) {
      t.records.push_back(std::move(rec));
      Fail(t, "iteration " + std::to_string(k) + ": fractional optimum but no cut");
      return t;
    }

    state.x_star = sol->x;
    state.lp_value = sol->value;
    std::vector<Cut> candidates = active;
    candidates.insert(candidates.end(), state.pool.cuts.begin(), state.pool.cuts.end());
    rec.scores = ScoreCandidates(candidates, state, scorer, rng);
    rec.selected_ids = SelectRetained(candidates, rec.scores, k + 1);
    const std::set<int64_t> keep(rec.selected_ids.begin(), rec.selected_ids.end());
    active.clear();
    for (const Cut& c : candidates) {
      if (keep.count(c.id)) {
        active.push_back(c);
      } else {
        rec.removed_ids.push_back(c.id);
      }
    }
    active.push_back(BoundCut(lp, sol->value, ids.Next(), k));
    t.records.push_back(std::move(rec));
  }
  t.status = TerminalStatus::kIterLimit;
  return t;
}

std::vector<double> BoundSequence(const Trajectory& traj) {
  std::vector<double> values;
  for (const IterationRecord& r : traj.records) values.push_back(r.lp_value);
  if (traj.mode == RunMode::kRemoval && !traj.records.empty() &&
      traj.status != TerminalStatus::kNumericalFailure) {
    values.push_back(traj.final_value);
  }
  return values;
}

std::vector<double> ComputeIgc(const std::vector<double>& values, double z_int) {
  std::vector<double> igc(values.size(), 1.0);
  if (values.empty()) return igc;
  const double gap = z_int - values[0];
  if (std::abs(gap) <= 1e-9) return igc;
  for (std::size_t k = 0; k < values.size(); ++k) {
    igc[k] = std::clamp((values[k] - values[0]) / gap, 0.0, 1.0);
  }
  return igc;
}

std::vector<double> ComputeIgc(const Trajectory& traj, double z_int) {
  return ComputeIgc(BoundSequence(traj), z_int);
}

std::string SerializeTrajectory(const Trajectory& traj) {
  json records = json::array();
  for (const IterationRecord& r : traj.records) {
    json jr = {{"iter", r.iter},
               {"lp_value", r.lp_value},
               {"pooled_value", r.pooled_value},
               {"pool_size", r.pool_size},
               {"num_active", r.num_active},
               {"lp_rows", r.lp_rows},
               {"selected_ids", r.selected_ids},
               {"removed_ids", r.removed_ids},
               {"x_star", r.x_star},
               {"scores", ScoresToJson(r.scores)}};
    if (!r.active_cuts.empty() || !r.pool.empty()) {
      jr["active_cuts"] = CutsToJson(r.active_cuts);
      jr["pool"] = CutsToJson(r.pool);
    }
    records.push_back(std::move(jr));
  }
  json j = {{"format", "cutremoval-trajectory"},
            {"version", kTrajectoryFormatVersion},
            {"instance_id", traj.instance_id},
            {"policy_id", traj.policy_id},
            {"mode", ToString(traj.mode)},
            {"status", ToString(traj.status)},
            {"failure", traj.failure},
            {"max_iters", traj.max_iters},
            {"final_value", traj.final_value},
            {"records", records}};
  return j.dump() + "\n";
}

Trajectory ParseTrajectory(const std::string& text) {
  try {
    const json j = json::parse(text);
    if (j.at("format").get<std::string>() != "cutremoval-trajectory" ||
        j.at("version").get<int>() != kTrajectoryFormatVersion) {
      throw std::runtime_error("not a supported trajectory file");
    }
    Trajectory t;
    t.instance_id = j.at("instance_id").get<std::string>();
    t.policy_id = j.at("policy_id").get<std::string>();
    t.mode = j.at("mode").get<std::string>() == "removal" ? RunMode::kRemoval
                                                         : RunMode::kAddOnly;
    const std::string status = j.at("status").get<std::string>();
    t.status = status == "IntegralFound"  ? TerminalStatus::kIntegralFound
               : status == "IterLimit"    ? TerminalStatus::kIterLimit
                                          : TerminalStatus::kNumericalFailure;
    t.failure = j.at("failure").get<std::string>();
    t.max_iters = j.at("max_iters").get<int>();
    t.final_value = j.at("final_value").get<double>();
    for (const json& jr : j.at("records")) {
      IterationRecord r;
      r.iter = jr.at("iter").get<int>();
      r.lp_value = jr.at("lp_value").get<double>();
      r.pooled_value = jr.at("pooled_value").get<double>();
      r.pool_size = jr.at("pool_size").get<int>();
      r.num_active = jr.at("num_active").get<int>();
      r.lp_rows = jr.at("lp_rows").get<int>();
      r.selected_ids = jr.at("selected_ids").get<std::vector<int64_t>>();
      r.removed_ids = jr.at("removed_ids").get<std::vector<int64_t>>();
      r.x_star = jr.at("x_star").get<std::vector<double>>();
      r.scores = ScoresFromJson(jr.at("scores"));
      if (jr.contains("pool")) {
        r.active_cuts = CutsFromJson(jr.at("active_cuts"));
        r.pool = CutsFromJson(jr.at("pool"));
      }
      t.records.push_back(std::move(r));
    }
    return t;
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("malformed trajectory file: ") + e.what());
  }
}

void SaveTrajectory(const Trajectory& traj, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << SerializeTrajectory(traj);
}

Trajectory LoadTrajectory(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseTrajectory(buffer.str());
}

}  // namespace cutremoval
