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

#include "cutremoval/instances.h"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>
#include <utility>

#include <glog/logging.h>

#include "json.hpp"

namespace cutremoval {
namespace {

using nlohmann::json;

int Uniform(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

std::vector<double> UnitRow(int n, int j, double v = 1.0) {
  std::vector<double> row(n, 0.0);
  row[j] = v;
  return row;
}

void AddUpperBounds(LinearProgram& lp, int first, int count) {
  for (int j = first; j < first + count; ++j) {
    lp.AddRow(UnitRow(lp.num_vars, j), Sense::kLe, 1.0);
  }
}

bool IsMaximization(Family f) {
  return f == Family::kPacking || f == Family::kBinPacking || f == Family::kMaxCut;
}

const char* SenseName(Sense s) {
  switch (s) {
    case Sense::kLe:
      return "LE";
    case Sense::kGe:
      return "GE";
    case Sense::kEq:
      return "EQ";
  }
  return "?";
}

Sense ParseSense(const std::string& s) {
  if (s == "LE") return Sense::kLe;
  if (s == "GE") return Sense::kGe;
  if (s == "EQ") return Sense::kEq;
  throw std::runtime_error("unknown row sense '" + s + "'");
}

}  // namespace

const char* ToString(Family family) {
  switch (family) {
    case Family::kPacking:
      return "packing";
    case Family::kBinPacking:
      return "binpacking";
    case Family::kMaxCut:
      return "maxcut";
    case Family::kProductionPlanning:
      return "planning";
    case Family::kSetCover:
      return "setcover";
  }
  return "?";
}

std::optional<Family> ParseFamily(std::string_view name) {
  for (Family f : kAllFamilies) {
    if (name == ToString(f)) return f;
  }
  if (name == "bin_packing" || name == "bin-packing") return Family::kBinPacking;
  if (name == "max_cut" || name == "max-cut") return Family::kMaxCut;
  if (name == "production_planning" || name == "production-planning") {
    return Family::kProductionPlanning;
  }
  if (name == "set_cover" || name == "set-cover") return Family::kSetCover;
  return std::nullopt;
}

bool IsKnownPreset(std::string_view preset) {
  return preset == "tiny" || preset == "small" || preset == "train" || preset == "large";
}

InstanceSpec PresetSpec(Family family, std::string_view preset) {
  if (!IsKnownPreset(preset)) {
    throw std::invalid_argument("unknown preset '" + std::string(preset) + "'");
  }
  // Columns: tiny, small, train, large.
  const int idx = preset == "tiny" ? 0 : preset == "small" ? 1 : preset == "train" ? 2 : 3;
  constexpr int kPackingN[] = {5, 20, 50, 100};
  constexpr int kBinN[] = {8, 20, 50, 100};
  constexpr int kVertices[] = {4, 6, 9, 14};
  constexpr int kEdges[] = {5, 12, 25, 40};
  constexpr int kHorizon[] = {3, 6, 10, 15};
  constexpr int kCover[] = {8, 20, 35, 50};
  InstanceSpec spec;
  spec.family = family;
  switch (family) {
    case Family::kPacking:
      spec.num_vars = spec.num_constraints = kPackingN[idx];
      break;
    case Family::kBinPacking:
      spec.num_vars = spec.num_constraints = kBinN[idx];
      break;
    case Family::kMaxCut:
      spec.num_vertices = kVertices[idx];
      spec.num_edges = kEdges[idx];
      break;
    case Family::kProductionPlanning:
      spec.horizon = kHorizon[idx];
      break;
    case Family::kSetCover:
      spec.num_elements = spec.num_subsets = kCover[idx];
      spec.membership_p = 0.2;
      break;
  }
  return spec;
}

LinearProgram GenPacking(int n, int m, std::mt19937_64& rng) {
  LinearProgram lp;
  lp.num_vars = n;
  for (int j = 0; j < n; ++j) lp.objective.push_back(-Uniform(rng, 1, 10));
  for (int i = 0; i < m; ++i) {
    std::vector<double> row(n);
    for (double& a : row) a = Uniform(rng, 0, 5);
    lp.AddRow(std::move(row), Sense::kLe, Uniform(rng, 9 * n, 10 * n));
  }
  return lp;
}

LinearProgram GenBinPacking(int n, int m, std::mt19937_64& rng) {
  LinearProgram lp;
  lp.num_vars = n;
  for (int j = 0; j < n; ++j) lp.objective.push_back(-Uniform(rng, 1, 10));
  for (int i = 0; i < m; ++i) {
    std::vector<double> row(n);
    for (double& a : row) a = Uniform(rng, 5, 30);
    lp.AddRow(std::move(row), Sense::kLe, Uniform(rng, 10 * n, 20 * n));
  }
  AddUpperBounds(lp, 0, n);
  return lp;
}

LinearProgram GenMaxCut(int num_vertices, int num_edges, std::mt19937_64& rng) {
  std::vector<std::pair<int, int>> pairs;
  for (int u = 0; u < num_vertices; ++u) {
    for (int v = u + 1; v < num_vertices; ++v) pairs.emplace_back(u, v);
  }
  if (num_edges > int(pairs.size())) {
    throw std::invalid_argument("more edges than vertex pairs");
  }
  std::shuffle(pairs.begin(), pairs.end(), rng);
  pairs.resize(num_edges);
  std::sort(pairs.begin(), pairs.end());

  // Variables: x_v for each vertex side, then y_e for each cut edge.
  LinearProgram lp;
  lp.num_vars = num_vertices + num_edges;
  lp.objective.assign(lp.num_vars, 0.0);
  for (int e = 0; e < num_edges; ++e) {
    lp.objective[num_vertices + e] = -Uniform(rng, 1, 10);
  }
  for (int e = 0; e < num_edges; ++e) {
    const auto [u, v] = pairs[e];
    std::vector<double> row(lp.num_vars, 0.0);
    row[num_vertices + e] = 1;
    row[u] = -1;
    row[v] = -1;
    lp.AddRow(row, Sense::kLe, 0);
    row[u] = 1;
    row[v] = 1;
    lp.AddRow(std::move(row), Sense::kLe, 2);
  }
  AddUpperBounds(lp, 0, lp.num_vars);
  return lp;
}

LinearProgram GenProductionPlanning(int horizon, std::mt19937_64& rng) {
  const int T = horizon;
  // Variables: production p_t, end-of-period stock s_t (t < T), setup y_t.
  const int p0 = 0, s0 = T, y0 = 2 * T - 1;
  LinearProgram lp;
  lp.num_vars = 3 * T - 1;
  lp.objective.assign(lp.num_vars, 0.0);
  std::vector<int> demand(T);
  for (int t = 0; t < T; ++t) demand[t] = Uniform(rng, 1, 9);
  for (int t = 0; t < T; ++t) lp.objective[p0 + t] = Uniform(rng, 1, 5);
  for (int t = 0; t + 1 < T; ++t) lp.objective[s0 + t] = Uniform(rng, 1, 5);
  for (int t = 0; t < T; ++t) lp.objective[y0 + t] = Uniform(rng, 10, 50);

  for (int t = 0; t < T; ++t) {
    std::vector<double> row(lp.num_vars, 0.0);
    row[p0 + t] = 1;
    if (t > 0) row[s0 + t - 1] = 1;
    if (t + 1 < T) row[s0 + t] = -1;
    lp.AddRow(std::move(row), Sense::kEq, demand[t]);
  }
  for (int t = 0; t < T; ++t) {
    const int remaining = std::accumulate(demand.begin() + t, demand.end(), 0);
    std::vector<double> row(lp.num_vars, 0.0);
    row[p0 + t] = 1;
    row[y0 + t] = -remaining;
    lp.AddRow(std::move(row), Sense::kLe, 0);
  }
  AddUpperBounds(lp, y0, T);
  return lp;
}

LinearProgram GenSetCover(int num_elements, int num_subsets, double p,
                          std::mt19937_64& rng) {
  std::bernoulli_distribution member(p);
  std::vector<std::vector<bool>> in(num_subsets, std::vector<bool>(num_elements));
  for (int s = 0; s < num_subsets; ++s) {
    for (int e = 0; e < num_elements; ++e) in[s][e] = member(rng);
  }
  for (int s = 0; s < num_subsets; ++s) {
    if (std::none_of(in[s].begin(), in[s].end(), [](bool b) { return b; })) {
      in[s][Uniform(rng, 0, num_elements - 1)] = true;
    }
  }
  for (int e = 0; e < num_elements; ++e) {
    bool covered = false;
    for (int s = 0; s < num_subsets && !covered; ++s) covered = in[s][e];
    if (!covered) in[Uniform(rng, 0, num_subsets - 1)][e] = true;
  }

  LinearProgram lp;
  lp.num_vars = num_subsets;
  lp.objective.assign(num_subsets, 1.0);
  for (int e = 0; e < num_elements; ++e) {
    std::vector<double> row(num_subsets, 0.0);
    for (int s = 0; s < num_subsets; ++s) row[s] = in[s][e] ? 1.0 : 0.0;
    lp.AddRow(std::move(row), Sense::kGe, 1);
  }
  AddUpperBounds(lp, 0, num_subsets);
  return lp;
}

LinearProgram GenerateOnce(const InstanceSpec& spec) {
  std::mt19937_64 rng(spec.seed);
  LinearProgram lp;
  switch (spec.family) {
    case Family::kPacking:
      lp = GenPacking(spec.num_vars, spec.num_constraints, rng);
      break;
    case Family::kBinPacking:
      lp = GenBinPacking(spec.num_vars, spec.num_constraints, rng);
      break;
    case Family::kMaxCut:
      lp = GenMaxCut(spec.num_vertices, spec.num_edges, rng);
      break;
    case Family::kProductionPlanning:
      lp = GenProductionPlanning(spec.horizon, rng);
      break;
    case Family::kSetCover:
      lp = GenSetCover(spec.num_elements, spec.num_subsets, spec.membership_p, rng);
      break;
  }
  const LpSolution sol = SolveLp(lp);
  if (sol.status != LpStatus::kOptimal) {
    throw InfeasibleDraw(std::string(ToString(spec.family)) + " draw with seed " +
                         std::to_string(spec.seed) + " is " + ToString(sol.status));
  }
  return lp;
}

Instance Generate(const InstanceSpec& spec, std::string id) {
  Instance inst;
  inst.id = std::move(id);
  inst.spec = spec;
  inst.negated_objective = IsMaximization(spec.family);
  InstanceSpec draw = spec;
  for (int attempt = 0; attempt < 100; ++attempt) {
    draw.seed = spec.seed + attempt;
    try {
      inst.lp = GenerateOnce(draw);
      inst.draw_seed = draw.seed;
      inst.rejected_draws = attempt;
      return inst;
    } catch (const InfeasibleDraw& e) {
      LOG(INFO) << "rejected draw: " << e.what();
    }
  }
  throw InfeasibleDraw("no feasible bounded draw in 100 attempts");
}

std::string SerializeInstance(const Instance& inst) {
  json spec = {{"num_vars", inst.spec.num_vars},
               {"num_constraints", inst.spec.num_constraints},
               {"num_vertices", inst.spec.num_vertices},
               {"num_edges", inst.spec.num_edges},
               {"horizon", inst.spec.horizon},
               {"num_elements", inst.spec.num_elements},
               {"num_subsets", inst.spec.num_subsets},
               {"membership_p", inst.spec.membership_p}};
  json rows = json::array();
  for (const Row& r : inst.lp.rows) {
    rows.push_back({{"coeffs", r.coeffs}, {"sense", SenseName(r.sense)}, {"rhs", r.rhs}});
  }
  json j = {{"format", "cutremoval-instance"},
            {"version", kInstanceFormatVersion},
            {"id", inst.id},
            {"family", ToString(inst.spec.family)},
            {"seed", inst.spec.seed},
            {"draw_seed", inst.draw_seed},
            {"rejected_draws", inst.rejected_draws},
            {"sense", "min"},
            {"negated_objective", inst.negated_objective},
            {"spec", spec},
            {"num_vars", inst.lp.num_vars},
            {"objective", inst.lp.objective},
            {"rows", rows}};
  return j.dump() + "\n";
}

Instance ParseInstance(const std::string& text) {
  try {
    const json j = json::parse(text);
    if (j.at("format").get<std::string>() != "cutremoval-instance") {
      throw std::runtime_error("not an instance file");
    }
    if (j.at("version").get<int>() != kInstanceFormatVersion) {
      throw std::runtime_error("unsupported instance version");
    }
    Instance inst;
    inst.id = j.at("id").get<std::string>();
    const auto family = ParseFamily(j.at("family").get<std::string>());
    if (!family) throw std::runtime_error("unknown family in instance file");
    inst.spec.family = *family;
    inst.spec.seed = j.at("seed").get<uint64_t>();
    const json& spec = j.at("spec");
    inst.spec.num_vars = spec.at("num_vars").get<int>();
    inst.spec.num_constraints = spec.at("num_constraints").get<int>();
    inst.spec.num_vertices = spec.at("num_vertices").get<int>();
    inst.spec.num_edges = spec.at("num_edges").get<int>();
    inst.spec.horizon = spec.at("horizon").get<int>();
    inst.spec.num_elements = spec.at("num_elements").get<int>();
    inst.spec.num_subsets = spec.at("num_subsets").get<int>();
    inst.spec.membership_p = spec.at("membership_p").get<double>();
    inst.draw_seed = j.at("draw_seed").get<uint64_t>();
    inst.rejected_draws = j.at("rejected_draws").get<int>();
    inst.negated_objective = j.at("negated_objective").get<bool>();
    inst.lp.num_vars = j.at("num_vars").get<int>();
    inst.lp.objective = j.at("objective").get<std::vector<double>>();
    for (const json& r : j.at("rows")) {
      inst.lp.AddRow(r.at("coeffs").get<std::vector<double>>(),
                     ParseSense(r.at("sense").get<std::string>()),
                     r.at("rhs").get<double>());
    }
    const std::string problem = inst.lp.Validate();
    if (!problem.empty()) throw std::runtime_error("invalid instance: " + problem);
    return inst;
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("malformed instance file: ") + e.what());
  }
}

void SaveInstance(const Instance& instance, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << SerializeInstance(instance);
}

Instance LoadInstance(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseInstance(buffer.str());
}

}  // namespace cutremoval
