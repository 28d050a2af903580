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

// Cut selection: heuristics and look-ahead experts for adding one cut, and
// scorers that rank candidates when pruning back to a budget.

#ifndef CUTREMOVAL_POLICIES_H_
#define CUTREMOVAL_POLICIES_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cutremoval/gomory.h"
#include "cutremoval/model.h"
#include "cutremoval/state.h"

namespace cutremoval {

enum class AdditionKind {
  kRandom,
  kMaxViolation,
  kMaxNormViolation,
  kLexicographic,
  kMinSimilar,
  kLookAhead,
  kNeural,
};

enum class RemovalKind { kLookAheadRemove, kNeuralRemove, kRandomRemove };

struct AdditionPolicy {
  AdditionKind kind = AdditionKind::kRandom;
  uint64_t rng_seed = 0;
  std::shared_ptr<const MlpParams> model;
};

struct CutScorer {
  RemovalKind kind = RemovalKind::kLookAheadRemove;
  uint64_t rng_seed = 0;
  std::shared_ptr<const MlpParams> model;
};

const char* PolicyName(AdditionKind kind);
const char* PolicyName(RemovalKind kind);

// A policy named on the command line: one of
// random|mv|mnv|lex|minsim|lookahead|neural or
// remove-lookahead|remove-neural|remove-random.
struct PolicyChoice {
  bool removal = false;
  AdditionKind addition = AdditionKind::kRandom;
  RemovalKind remover = RemovalKind::kLookAheadRemove;

  std::string name() const;
  bool needs_model() const;
};

std::optional<PolicyChoice> ParsePolicy(std::string_view name);

class EmptyPool : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class MissingModel : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// LP value of base + active cuts + that one cut, per cut. A failed solve
// scores -infinity.
std::vector<double> LookaheadAddScores(std::span<const Cut> cuts,
                                       const CutPlaneState& state);

// state.lp_value minus the LP value of base + all candidates but one, per
// candidate. `state.lp_value` must be the LP value with every candidate.
std::vector<double> LookaheadRemoveScores(std::span<const Cut> candidates,
                                          const CutPlaneState& state);

// Copy of `state` whose x_star / lp_value describe base + active + pool, the
// point neural features are computed at. Returns nullopt if that LP fails.
std::optional<CutPlaneState> PooledState(const CutPlaneState& state);

// Picks one cut of `state.pool` and returns its id. `scores`, when given,
// receives the per-cut values the choice was based on (empty for random).
int64_t SelectAddition(const CutPlaneState& state, const AdditionPolicy& policy,
                       std::mt19937_64& rng, std::vector<double>* scores = nullptr);

// Higher is more valuable. `state` must be the pooled state: active cuts plus
// pool already solved together.
std::vector<double> ScoreCandidates(std::span<const Cut> candidates,
                                    const CutPlaneState& state, const CutScorer& scorer,
                                    std::mt19937_64& rng);

// Ids of the `budget` best candidates; ties go to the higher born_iter, then
// the lower id. Returned in rank order.
std::vector<int64_t> SelectRetained(std::span<const Cut> candidates,
                                    std::span<const double> scores, int budget);

}  // namespace cutremoval

#endif  // CUTREMOVAL_POLICIES_H_
