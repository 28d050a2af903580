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

// Fixed 14-dimensional encoding of a cut in the context of a state. The
// order below is also the on-disk dataset column order.
//
//   0-3   mean, max, min, std of the cut coefficients (alpha and beta)
//   4-7   mean, max, min, std of the objective c
//   8     parallelism  alpha.c / (|alpha| |c|)
//   9     efficacy     (alpha.x* - beta) / |alpha|, positive when violated
//   10    support      nnz(alpha) / n
//   11    integral support (all variables are integer here)
//   12    normalized violation  max(0, (alpha.x* - beta) / |beta|)
//   13    1 if the cut belongs to the newest pool

#ifndef CUTREMOVAL_FEATURES_H_
#define CUTREMOVAL_FEATURES_H_

#include <array>
#include <stdexcept>
#include <string_view>

#include "cutremoval/gomory.h"
#include "cutremoval/state.h"

namespace cutremoval {

inline constexpr int kNumFeatures = 14;
using FeatureVector = std::array<double, kNumFeatures>;

const std::array<std::string_view, kNumFeatures>& FeatureNames();

struct FeatureOptions {
  // Coefficient statistics over alpha plus beta (true) or alpha alone.
  bool include_beta_in_stats = true;
};

class ZeroNormCut : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Coefficient statistics are taken after scaling the cut by a power of ten
// so that max |alpha_i| lies in [1, 10).
FeatureVector Encode(const Cut& cut, const CutPlaneState& state,
                     const FeatureOptions& options = {});

}  // namespace cutremoval

#endif  // CUTREMOVAL_FEATURES_H_
