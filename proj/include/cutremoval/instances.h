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

// Seeded generators for five integer-program families. Every instance is a
// minimization with integral data over x >= 0; maximization families are
// emitted with a negated objective. FORMULATIONS.md lists the exact models.

#ifndef CUTREMOVAL_INSTANCES_H_
#define CUTREMOVAL_INSTANCES_H_

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cutremoval/lp_core.h"

namespace cutremoval {

enum class Family { kPacking, kBinPacking, kMaxCut, kProductionPlanning, kSetCover };

inline constexpr Family kAllFamilies[] = {Family::kPacking, Family::kBinPacking,
                                          Family::kMaxCut, Family::kProductionPlanning,
                                          Family::kSetCover};

const char* ToString(Family family);
std::optional<Family> ParseFamily(std::string_view name);

struct InstanceSpec {
  Family family = Family::kPacking;
  int num_vars = 0;          // packing, bin packing
  int num_constraints = 0;   // packing, bin packing (resource rows)
  int num_vertices = 0;      // max cut
  int num_edges = 0;         // max cut
  int horizon = 0;           // production planning
  int num_elements = 0;      // set cover
  int num_subsets = 0;       // set cover
  double membership_p = 0.2; // set cover
  uint64_t seed = 0;
};

// Named size presets: `tiny` (at most 10 variables, for exhaustive checks),
// `small` (desk scale), `train` and `large` (full-scale sizes).
InstanceSpec PresetSpec(Family family, std::string_view preset);
bool IsKnownPreset(std::string_view preset);

class InfeasibleDraw : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

LinearProgram GenPacking(int n, int m, std::mt19937_64& rng);
LinearProgram GenBinPacking(int n, int m, std::mt19937_64& rng);
LinearProgram GenMaxCut(int num_vertices, int num_edges, std::mt19937_64& rng);
LinearProgram GenProductionPlanning(int horizon, std::mt19937_64& rng);
LinearProgram GenSetCover(int num_elements, int num_subsets, double p,
                          std::mt19937_64& rng);

// Draws from the family with `spec.seed`; throws InfeasibleDraw when the LP
// relaxation is infeasible or unbounded.
LinearProgram GenerateOnce(const InstanceSpec& spec);

struct Instance {
  std::string id;
  InstanceSpec spec;
  // Seed of the accepted draw; spec.seed + number of rejected draws.
  uint64_t draw_seed = 0;
  int rejected_draws = 0;
  // The stored objective is the negation of the natural maximization one.
  bool negated_objective = false;
  LinearProgram lp;
};

// GenerateOnce with seeds spec.seed, spec.seed + 1, ... until a draw is
// feasible and bounded (at most 100 tries).
Instance Generate(const InstanceSpec& spec, std::string id);

inline constexpr int kInstanceFormatVersion = 1;

std::string SerializeInstance(const Instance& instance);
Instance ParseInstance(const std::string& text);
void SaveInstance(const Instance& instance, const std::string& path);
Instance LoadInstance(const std::string& path);

}  // namespace cutremoval

#endif  // CUTREMOVAL_INSTANCES_H_
