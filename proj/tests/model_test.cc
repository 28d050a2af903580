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

#include "cutremoval/model.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "gtest/gtest.h"

namespace cutremoval {
namespace {

FeatureVector RandomFeatures(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0, 1);
  FeatureVector f;
  for (double& v : f) v = g(rng);
  return f;
}

std::string TempPath(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

TEST(ForwardTest, ZeroParamsGiveZero) {
  const MlpParams p = ZeroMlp();
  std::mt19937_64 rng(1);
  for (int i = 0; i < 20; ++i) EXPECT_EQ(Forward(p, RandomFeatures(rng)), 0.0);
}

TEST(ForwardTest, SingleHiddenUnitByHand) {
  MlpParams p = ZeroMlp({kNumFeatures, 1, 1});
  p.weights[0][0] = 0.5;
  p.weights[0][1] = -0.25;
  p.biases[0][0] = 0.1;
  p.weights[1][0] = 2.0;
  p.biases[1][0] = -1.0;
  FeatureVector f{};
  f[0] = 1.0;
  f[1] = 2.0;
  // hidden = sigmoid(0.5 - 0.5 + 0.1) = sigmoid(0.1)
  const double h = 1.0 / (1.0 + std::exp(-0.1));
  EXPECT_NEAR(Forward(p, f), 2.0 * h - 1.0, 1e-15);
  p.target_mean = 3.0;
  p.target_std = 2.0;
  EXPECT_NEAR(Forward(p, f), (2.0 * h - 1.0) * 2.0 + 3.0, 1e-14);
}

TEST(ForwardTest, TinyPerturbationChangesNothingMeasurable) {
  const MlpParams p = InitMlp(3);
  std::mt19937_64 rng(2);
  for (int i = 0; i < 50; ++i) {
    FeatureVector f = RandomFeatures(rng);
    const double a = Forward(p, f);
    f[i % kNumFeatures] += 1e-13;
    EXPECT_NEAR(Forward(p, f), a, 1e-11);
  }
}

TEST(GradientTest, MatchesCentralDifferences) {
  std::mt19937_64 rng(12);
  double worst = 0.0;
  for (int draw = 0; draw < 100; ++draw) {
    MlpParams p = InitMlp(draw, {kNumFeatures, 6, 5, 1});
    std::vector<std::vector<double>> inputs(3);
    std::vector<double> targets(3);
    for (int s = 0; s < 3; ++s) {
      const FeatureVector f = RandomFeatures(rng);
      inputs[s].assign(f.begin(), f.end());
      targets[s] = std::normal_distribution<double>(0, 1)(rng);
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
      const double rel = std::abs(fd - grad[i]) / std::max(1e-6, std::abs(fd) + std::abs(grad[i]));
      worst = std::max(worst, rel);
    }
    Unflatten(flat, &p);
  }
  EXPECT_LT(worst, 1e-4);
}

std::vector<TrainSample> PlantedLinear(int count, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<TrainSample> data(count);
  for (TrainSample& s : data) {
    s.features = RandomFeatures(rng);
    s.target = 0.3 * s.features[0] - 0.7 * s.features[3] + 0.2 * s.features[9] + 1.0;
  }
  return data;
}

TEST(TrainTest, ConstantTargetIsAbsorbed) {
  std::vector<TrainSample> data = PlantedLinear(100, 5);
  for (TrainSample& s : data) s.target = 2.5;
  const TrainResult r =
      TrainSgd(data, data, {.learning_rate = 0.1, .epochs = 3000, .batch_size = 10, .patience = 3000});
  EXPECT_LT(r.report.train_loss[r.report.best_epoch], 1e-6);
  EXPECT_NEAR(Forward(r.params, data[0].features), 2.5, 1e-3);
}

TEST(TrainTest, LinearTargetsLossDropsTenfold) {
  const auto train = PlantedLinear(2000, 6);
  const auto val = PlantedLinear(500, 7);
  const TrainResult r =
      TrainSgd(train, val, {.learning_rate = 0.05, .epochs = 50, .batch_size = 32});
  ASSERT_GE(r.report.val_loss.size(), 2u);
  const double best = r.report.val_loss[r.report.best_epoch];
  EXPECT_LT(best * 10, r.report.val_loss[0]);
  EXPECT_LE(best, r.report.val_loss[0]);
}

TEST(TrainTest, DeterministicGivenSeed) {
  const auto train = PlantedLinear(300, 8);
  const TrainHyperparams hp{.learning_rate = 0.05, .epochs = 5, .batch_size = 16, .seed = 9};
  const TrainResult a = TrainSgd(train, train, hp);
  const TrainResult b = TrainSgd(train, train, hp);
  EXPECT_EQ(Flatten(a.params), Flatten(b.params));
  EXPECT_EQ(a.report.val_loss, b.report.val_loss);
}

TEST(TrainTest, EarlyStoppingKeepsBestParameters) {
  const auto train = PlantedLinear(100, 10);
  auto val = PlantedLinear(100, 11);
  for (TrainSample& s : val) s.target = -s.target * 5;  // unlearnable
  const TrainResult r =
      TrainSgd(train, val, {.learning_rate = 0.05, .epochs = 200, .batch_size = 10, .patience = 3});
  EXPECT_TRUE(r.report.stopped_early);
  EXPECT_LE(r.report.val_loss[r.report.best_epoch], r.report.val_loss[0]);
  EXPECT_EQ(int(r.report.val_loss.size()) - 1, r.report.best_epoch + 3);
}

TEST(TrainTest, HugeLearningRateDiverges) {
  auto train = PlantedLinear(100, 12);
  for (TrainSample& s : train) s.target *= 1e6;
  EXPECT_THROW(TrainSgd(train, {}, {.learning_rate = 1e30, .epochs = 5, .batch_size = 10,
                                    .standardize_targets = false}),
               Diverged);
}

TEST(ModelFileTest, RoundTripIsExact) {
  MlpParams p = InitMlp(21);
  p.feature_mean[3] = 0.123456789012345;
  p.feature_std[4] = 3.3;
  p.target_mean = 1.0 / 3.0;
  p.metadata["family"] = "packing";
  const std::string path = TempPath("cutremoval_model_roundtrip.json");
  SaveModel(p, path);
  const MlpParams q = LoadModel(path);
  EXPECT_EQ(Flatten(p), Flatten(q));
  EXPECT_EQ(q.metadata.at("family"), "packing");
  std::mt19937_64 rng(3);
  for (int i = 0; i < 1000; ++i) {
    const FeatureVector f = RandomFeatures(rng);
    ASSERT_EQ(Forward(p, f), Forward(q, f));
  }
  std::remove(path.c_str());
}

TEST(ModelFileTest, TruncatedOrWrongVersionIsSchemaMismatch) {
  const std::string text = SerializeModel(InitMlp(1));
  EXPECT_THROW(ParseModel(text.substr(0, text.size() / 2)), SchemaMismatch);
  std::string bumped = text;
  bumped.replace(bumped.find("\"version\": 1"), 12, "\"version\": 7");
  EXPECT_THROW(ParseModel(bumped), SchemaMismatch);
  std::string shape = text;
  shape.replace(shape.find("\"layer_dims\": ["), 15, "\"layer_dims\": [13, ");
  EXPECT_THROW(ParseModel(shape), SchemaMismatch);
}

}  // namespace
}  // namespace cutremoval
