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

#include "cutremoval/policies.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <glog/logging.h>

#include "cutremoval/features.h"

namespace cutremoval {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

std::optional<LpSolution> TrySolve(const LinearProgram& lp, const SimplexOptions& opts) {
  // A valid cut on a feasible relaxation keeps it feasible and bounded, so a
  // float failure here is numerical; retry exactly before giving up.
  SimplexOptions o = opts;
  for (;;) {
    try {
      LpSolution sol = SolveLp(lp, o);
      if (sol.status == LpStatus::kOptimal) return sol;
      LOG(WARNING) << "look-ahead LP is " << ToString(sol.status);
    } catch (const CycleLimitExceeded& e) {
      LOG(WARNING) << "look-ahead LP failed: " << e.what();
    }
    if (o.arithmetic == Arithmetic::kRational) return std::nullopt;
    o.arithmetic = Arithmetic::kRational;
  }
}

// Index of the largest score; NaN never wins, ties go to the lowest cut id.
std::size_t ArgMax(std::span<const Cut> cuts, std::span<const double> scores) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < cuts.size(); ++i) {
    const double a = scores[i], b = scores[best];
    if (std::isnan(b) && !std::isnan(a)) {
      best = i;
    } else if (a > b || (a == b && cuts[i].id < cuts[best].id)) {
      best = i;
    }
  }
  return best;
}

std::vector<double> NeuralScores(std::span<const Cut> cuts, const CutPlaneState& state,
                                 const MlpParams& model) {
  std::vector<double> scores(cuts.size(), kNegInf);
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    try {
      scores[i] = Forward(model, Encode(cuts[i], state));
    } catch (const ZeroNormCut&) {
      LOG(WARNING) << "cut " << cuts[i].id << " has no coefficients; not scored";
    }
  }
  return scores;
}

}  // namespace

const char* PolicyName(AdditionKind kind) {
  switch (kind) {
    case AdditionKind::kRandom:
      return "random";
    case AdditionKind::kMaxViolation:
      return "mv";
    case AdditionKind::kMaxNormViolation:
      return "mnv";
    case AdditionKind::kLexicographic:
      return "lex";
    case AdditionKind::kMinSimilar:
      return "minsim";
    case AdditionKind::kLookAhead:
      return "lookahead";
    case AdditionKind::kNeural:
      return "neural";
  }
  return "?";
}

const char* PolicyName(RemovalKind kind) {
  switch (kind) {
    case RemovalKind::kLookAheadRemove:
      return "remove-lookahead";
    case RemovalKind::kNeuralRemove:
      return "remove-neural";
    case RemovalKind::kRandomRemove:
      return "remove-random";
  }
  return "?";
}

std::string PolicyChoice::name() const {
  return removal ? PolicyName(remover) : PolicyName(addition);
}

bool PolicyChoice::needs_model() const {
  return removal ? remover == RemovalKind::kNeuralRemove
                 : addition == AdditionKind::kNeural;
}

std::optional<PolicyChoice> ParsePolicy(std::string_view name) {
  PolicyChoice choice;
  for (AdditionKind k :
       {AdditionKind::kRandom, AdditionKind::kMaxViolation, AdditionKind::kMaxNormViolation,
        AdditionKind::kLexicographic, AdditionKind::kMinSimilar, AdditionKind::kLookAhead,
        AdditionKind::kNeural}) {
    if (name == PolicyName(k)) {
      choice.addition = k;
      return choice;
    }
  }
  for (RemovalKind k : {RemovalKind::kLookAheadRemove, RemovalKind::kNeuralRemove,
                        RemovalKind::kRandomRemove}) {
    if (name == PolicyName(k)) {
      choice.removal = true;
      choice.remover = k;
      return choice;
    }
  }
  return std::nullopt;
}

std::vector<double> LookaheadAddScores(std::span<const Cut> cuts,
                                       const CutPlaneState& state) {
  LinearProgram lp = WithCuts(*state.base, state.active_cuts);
  std::vector<double> scores;
  scores.reserve(cuts.size());
  for (const Cut& cut : cuts) {
    lp.AddRow(cut.alpha, Sense::kLe, cut.beta);
    const auto sol = TrySolve(lp, state.lp_options);
    scores.push_back(sol ? sol->value : kNegInf);
    lp.rows.pop_back();
  }
  return scores;
}

std::vector<double> LookaheadRemoveScores(std::span<const Cut> candidates,
                                          const CutPlaneState& state) {
  std::vector<double> scores;
  scores.reserve(candidates.size());
  std::vector<Cut> others;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    others.assign(candidates.begin(), candidates.end());
    others.erase(others.begin() + i);
    const auto sol = TrySolve(WithCuts(*state.base, others), state.lp_options);
    scores.push_back(sol ? state.lp_value - sol->value : kNegInf);
  }
  return scores;
}

std::optional<CutPlaneState> PooledState(const CutPlaneState& state) {
  const auto sol = TrySolve(WithCuts(WithCuts(*state.base, state.active_cuts),
                                     state.pool.cuts),
                            state.lp_options);
  if (!sol) return std::nullopt;
  CutPlaneState pooled = state;
  pooled.x_star = sol->x;
  pooled.lp_value = sol->value;
  return pooled;
}

int64_t SelectAddition(const CutPlaneState& state, const AdditionPolicy& policy,
                       std::mt19937_64& rng, std::vector<double>* scores_out) {
  const std::vector<Cut>& cuts = state.pool.cuts;
  if (cuts.empty()) throw EmptyPool("cannot select from an empty cutpool");
  if (scores_out != nullptr) scores_out->clear();
  if (policy.kind == AdditionKind::kRandom) {
    std::uniform_int_distribution<std::size_t> pick(0, cuts.size() - 1);
    return cuts[pick(rng)].id;
  }

  std::vector<double> scores(cuts.size());
  const std::vector<double>& c = state.base->objective;
  switch (policy.kind) {
    case AdditionKind::kMaxViolation:
    case AdditionKind::kMaxNormViolation:
      for (std::size_t i = 0; i < cuts.size(); ++i) {
        const double v = cuts[i].source_value;
        double s = std::abs(v - std::round(v));
        if (policy.kind == AdditionKind::kMaxNormViolation && cuts[i].row_norm > 0) {
          s /= cuts[i].row_norm;
        }
        scores[i] = s;
      }
      break;
    case AdditionKind::kLexicographic:
      for (std::size_t i = 0; i < cuts.size(); ++i) scores[i] = -cuts[i].source_column;
      break;
    case AdditionKind::kMinSimilar: {
      const double c_norm = std::sqrt(Dot(c, c));
      for (std::size_t i = 0; i < cuts.size(); ++i) {
        const double a_norm = std::sqrt(Dot(cuts[i].alpha, cuts[i].alpha));
        const double denom = a_norm * c_norm;
        scores[i] = denom > 0 ? -Dot(cuts[i].alpha, c) / denom : 0.0;
      }
      break;
    }
    case AdditionKind::kLookAhead:
      scores = LookaheadAddScores(cuts, state);
      break;
    case AdditionKind::kNeural: {
      if (!policy.model) throw MissingModel("neural policy needs a model");
      const auto pooled = PooledState(state);
      scores = NeuralScores(cuts, pooled ? *pooled : state, *policy.model);
      break;
    }
    case AdditionKind::kRandom:
      break;
  }
  if (scores_out != nullptr) *scores_out = scores;
  return cuts[ArgMax(cuts, scores)].id;
}

std::vector<double> ScoreCandidates(std::span<const Cut> candidates,
                                    const CutPlaneState& state, const CutScorer& scorer,
                                    std::mt19937_64& rng) {
  switch (scorer.kind) {
    case RemovalKind::kLookAheadRemove:
      return LookaheadRemoveScores(candidates, state);
    case RemovalKind::kNeuralRemove:
      if (!scorer.model) throw MissingModel("neural remover needs a model");
      return NeuralScores(candidates, state, *scorer.model);
    case RemovalKind::kRandomRemove: {
      std::uniform_real_distribution<double> u(0.0, 1.0);
      std::vector<double> scores(candidates.size());
      for (double& s : scores) s = u(rng);
      return scores;
    }
  }
  return {};
}

std::vector<int64_t> SelectRetained(std::span<const Cut> candidates,
                                    std::span<const double> scores, int budget) {
  std::vector<std::size_t> order(candidates.size());
  std::iota(order.begin(), order.end(), 0);
  auto key = [&](std::size_t i) { return std::isnan(scores[i]) ? kNegInf : scores[i]; };
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (key(a) != key(b)) return key(a) > key(b);
    if (candidates[a].born_iter != candidates[b].born_iter) {
      return candidates[a].born_iter > candidates[b].born_iter;
    }
    return candidates[a].id < candidates[b].id;
  });
  const std::size_t keep = std::min<std::size_t>(order.size(), std::max(0, budget));
  std::vector<int64_t> ids;
  ids.reserve(keep);
  for (std::size_t r = 0; r < keep; ++r) ids.push_back(candidates[order[r]].id);
  return ids;
}

}  // namespace cutremoval
