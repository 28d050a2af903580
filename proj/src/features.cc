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

#include "cutremoval/features.h"

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

namespace cutremoval {
namespace {

struct Stats {
  double mean = 0, max = 0, min = 0, std = 0;
};

Stats Describe(std::span<const double> v) {
  Stats s;
  if (v.empty()) return s;
  s.max = *std::max_element(v.begin(), v.end());
  s.min = *std::min_element(v.begin(), v.end());
  double sum = 0;
  for (double x : v) sum += x;
  s.mean = sum / v.size();
  double sq = 0;
  for (double x : v) sq += (x - s.mean) * (x - s.mean);
  s.std = std::sqrt(sq / v.size());
  return s;
}

double Norm(std::span<const double> v) { return std::sqrt(Dot(v, v)); }

}  // namespace

const std::array<std::string_view, kNumFeatures>& FeatureNames() {
  static const std::array<std::string_view, kNumFeatures> kNames = {
      "cut_mean",    "cut_max",      "cut_min",          "cut_std",
      "obj_mean",    "obj_max",      "obj_min",          "obj_std",
      "parallelism", "efficacy",     "support",          "integral_support",
      "norm_violation", "latest_pool"};
  return kNames;
}

FeatureVector Encode(const Cut& cut, const CutPlaneState& state,
                     const FeatureOptions& options) {
  const std::vector<double>& c = state.base->objective;
  const double alpha_norm = Norm(cut.alpha);
  if (alpha_norm < 1e-12) throw ZeroNormCut("cut has a zero coefficient vector");

  double max_abs = 0;
  for (double a : cut.alpha) max_abs = std::max(max_abs, std::abs(a));
  const double scale = std::pow(10.0, -std::floor(std::log10(max_abs)));
  std::vector<double> coeffs;
  coeffs.reserve(cut.alpha.size() + 1);
  for (double a : cut.alpha) coeffs.push_back(a * scale);
  if (options.include_beta_in_stats) coeffs.push_back(cut.beta * scale);

  FeatureVector f{};
  const Stats cs = Describe(coeffs);
  f[0] = cs.mean;
  f[1] = cs.max;
  f[2] = cs.min;
  f[3] = cs.std;
  const Stats os = Describe(c);
  f[4] = os.mean;
  f[5] = os.max;
  f[6] = os.min;
  f[7] = os.std;

  const double c_norm = Norm(c);
  f[8] = c_norm > 0 ? std::clamp(Dot(cut.alpha, c) / (alpha_norm * c_norm), -1.0, 1.0)
                    : 0.0;
  const double violation = cut.Violation(state.x_star);
  f[9] = violation / alpha_norm;
  const auto nnz = std::count_if(cut.alpha.begin(), cut.alpha.end(),
                                 [](double a) { return a != 0.0; });
  f[10] = cut.alpha.empty() ? 0.0 : double(nnz) / cut.alpha.size();
  f[11] = nnz > 0 ? 1.0 : 0.0;
  f[12] = std::max(0.0, violation / std::max(std::abs(cut.beta), 1e-9));
  f[13] = cut.born_iter == state.iter ? 1.0 : 0.0;
  return f;
}

}  // namespace cutremoval
