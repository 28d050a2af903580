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

// Small MLP regressor that scores cuts from their feature vectors, plus its
// mini-batch SGD trainer and a versioned JSON model file.

#ifndef CUTREMOVAL_MODEL_H_
#define CUTREMOVAL_MODEL_H_

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cutremoval/features.h"

namespace cutremoval {

struct MlpParams {
  // [input, hidden..., 1]. Hidden layers use a sigmoid, the output is linear.
  std::vector<int> layer_dims = {kNumFeatures, 32, 32, 1};
  // weights[l] is row-major (layer_dims[l+1] x layer_dims[l]).
  std::vector<std::vector<double>> weights;
  std::vector<std::vector<double>> biases;
  // Inputs are z-scored with these before the first layer.
  std::vector<double> feature_mean = std::vector<double>(kNumFeatures, 0.0);
  std::vector<double> feature_std = std::vector<double>(kNumFeatures, 1.0);
  // Raw output = network output * target_std + target_mean.
  double target_mean = 0.0;
  double target_std = 1.0;
  uint64_t seed = 0;
  std::map<std::string, std::string> metadata;

  int num_layers() const { return static_cast<int>(layer_dims.size()) - 1; }
  int num_params() const;
};

// All-zero weights and biases with identity standardization.
MlpParams ZeroMlp(std::vector<int> layer_dims = {kNumFeatures, 32, 32, 1});

// Weights and biases uniform in [-1/sqrt(fan_in), 1/sqrt(fan_in)].
MlpParams InitMlp(uint64_t seed,
                  std::vector<int> layer_dims = {kNumFeatures, 32, 32, 1});

double Forward(const MlpParams& params, const FeatureVector& f);

// Network output before target de-standardization, on already standardized
// inputs. Exposed for the trainer and gradient checks.
double ForwardStandardized(const MlpParams& params, std::span<const double> z);

std::vector<double> Flatten(const MlpParams& params);
void Unflatten(std::span<const double> flat, MlpParams* params);

struct TrainSample {
  FeatureVector features{};
  double target = 0.0;
  std::string family;
  std::string instance_id;
  int iteration = 0;
  int64_t cut_id = -1;
};

// Mean squared error of ForwardStandardized(z_i) against y_i; when `grad` is
// non-null it receives dLoss/dParams in Flatten order.
double LossAndGradient(const MlpParams& params,
                       std::span<const std::vector<double>> inputs,
                       std::span<const double> targets,
                       std::vector<double>* grad);

struct TrainHyperparams {
  double learning_rate = 5e-3;
  int epochs = 50;
  int batch_size = 10'000;
  int patience = 5;
  uint64_t seed = 0;
  std::vector<int> hidden = {32, 32};
  bool standardize_targets = true;
};

struct TrainReport {
  // Index 0 holds the losses of the initial parameters, index e the losses
  // after epoch e. Losses are MSE in standardized target units.
  std::vector<double> train_loss;
  std::vector<double> val_loss;
  int best_epoch = 0;
  bool stopped_early = false;
};

class Diverged : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TrainResult {
  MlpParams params;
  TrainReport report;
};

TrainResult TrainSgd(std::span<const TrainSample> train,
                     std::span<const TrainSample> val,
                     const TrainHyperparams& hp = {});

class SchemaMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kModelFormatVersion = 1;

std::string SerializeModel(const MlpParams& params);
MlpParams ParseModel(const std::string& text);
void SaveModel(const MlpParams& params, const std::string& path);
MlpParams LoadModel(const std::string& path);

}  // namespace cutremoval

#endif  // CUTREMOVAL_MODEL_H_
