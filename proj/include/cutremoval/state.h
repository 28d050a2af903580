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

#ifndef CUTREMOVAL_STATE_H_
#define CUTREMOVAL_STATE_H_

#include <vector>

#include "cutremoval/gomory.h"
#include "cutremoval/lp_core.h"

namespace cutremoval {

// Snapshot of a cutting-plane run at iteration `iter`: the base rows, the
// active cuts, the newest pool and the fractional optimum that policies and
// features look at. In removal mode `x_star`/`lp_value` describe the LP with
// the whole pool included.
struct CutPlaneState {
  const LinearProgram* base = nullptr;
  std::vector<Cut> active_cuts;
  CutPool pool;
  int iter = 0;
  std::vector<double> x_star;
  double lp_value = 0.0;
  SimplexOptions lp_options;
};

}  // namespace cutremoval

#endif  // CUTREMOVAL_STATE_H_
